/*
   Copyright 2026 The tclsim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "tcl/reduced.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tcl/kernel.hpp"

namespace tcl {

void ReducedParams::validate() const {
    std::ostringstream msg;
    if (n_out < 4 || n_out % 2 != 0) {
        msg << "n_out = " << n_out << " violates n_out even and >= 4";
        throw std::invalid_argument(msg.str());
    }
    if (n <= n_out) {
        msg << "n = " << n << " violates n > n_out";
        throw std::invalid_argument(msg.str());
    }
    if (!(epsilon >= 0.0 && epsilon < 0.5)) {
        msg << "epsilon = " << epsilon << " violates 0 <= epsilon < 0.5";
        throw std::invalid_argument(msg.str());
    }
    if (!(r > 0.0 && r <= 1.0 - 2.0 * epsilon)) {
        msg << "r = " << r << " violates 0 < r <= 1 - 2*epsilon";
        throw std::invalid_argument(msg.str());
    }
    if (!(alpha >= 0.0)) {
        msg << "alpha = " << alpha << " violates alpha >= 0";
        throw std::invalid_argument(msg.str());
    }
}

double reduced_step(double n_up, const ReducedParams& p) {
    if (n_up < 0.0 || n_up > 1.0)
        throw std::invalid_argument("reduced_step: consumption must lie in [0, 1]");
    const double nn = p.n;
    const double k = (p.n_out / 2.0 - 1.0) / nn;
    const double f_dn = saturate(p.r * std::pow(2.0 * n_up, p.alpha), p.epsilon);
    const double f_up = saturate(p.r * std::pow(2.0 * (1.0 - n_up), p.alpha), p.epsilon);
    return ((nn - 2.0) / nn - k * (f_dn + f_up)) * n_up + (1.0 / nn + k * f_up);
}

std::vector<double> reduced_iterate(double n_up0, long steps, const ReducedParams& p,
                                    long* clamped_steps) {
    std::vector<double> out;
    out.reserve(steps + 1);
    long clamped = 0;
    double n_up = n_up0;
    out.push_back(n_up);
    for (long t = 0; t < steps; ++t) {
        double next = reduced_step(n_up, p);
        if (next < 0.0 || next > 1.0) {
            next = std::min(std::max(next, 0.0), 1.0);
            ++clamped;
        }
        n_up = next;
        out.push_back(n_up);
    }
    if (clamped_steps) *clamped_steps = clamped;
    return out;
}

double linear_factor(const ReducedParams& p) {
    const double nn = p.n;
    return (nn - 2.0) / nn - 2.0 * ((p.n_out / 2.0 - 1.0) / nn) * (1.0 + p.alpha) * p.r;
}

bool linear_factor_saturated(const ReducedParams& p) { return p.r >= 1.0 - 2.0 * p.epsilon; }

double saturated_factor(const ReducedParams& p) {
    const double nn = p.n;
    return (nn - 2.0) / nn - 2.0 * ((p.n_out / 2.0 - 1.0) / nn) * (1.0 - 2.0 * p.epsilon);
}

std::string reduced_regime_name(ReducedRegime r) {
    switch (r) {
        case ReducedRegime::Speedup: return "speedup";
        case ReducedRegime::AlternatingDecay: return "alternating-decay";
        case ReducedRegime::Unstable: return "unstable";
    }
    return "?";
}

ReducedRegime classify_regime(double mu) {
    if (!std::isfinite(mu)) throw std::invalid_argument("classify_regime: mu must be finite");
    if (mu > 1.0)
        throw std::domain_error("classify_regime: mu > 1 cannot arise from admissible parameters");
    if (mu >= 0.0) return ReducedRegime::Speedup;
    if (mu >= -1.0) return ReducedRegime::AlternatingDecay;
    return ReducedRegime::Unstable;
}

double alpha1_estimate(int n, int n_out, double r) {
    if (r <= 0.0) throw std::invalid_argument("alpha1_estimate: r must be positive");
    if (n_out <= 2) throw std::invalid_argument("alpha1_estimate: n_out must exceed 2");
    return (n - 2.0) / (r * (n_out - 2.0)) - 1.0;
}

double alpha2_estimate(int n, int n_out, double r) {
    if (r <= 0.0) throw std::invalid_argument("alpha2_estimate: r must be positive");
    if (n_out <= 2) throw std::invalid_argument("alpha2_estimate: n_out must exceed 2");
    return 2.0 * (n - 1.0) / (r * (n_out - 2.0)) - 1.0;
}

double frontier_alpha(int n, int n_out, double r) {
    if (r <= 0.0) throw std::invalid_argument("frontier_alpha: r must be positive");
    if (n_out < 4) throw std::invalid_argument("frontier_alpha: n_out must be >= 4");
    return (n - 1.0) / ((n_out / 2.0 - 1.0) * r) - 1.0;
}

}  // namespace tcl
