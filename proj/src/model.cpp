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

#include "tcl/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcl {

void ModelParams::validate() const {
    std::ostringstream msg;
    if (n_in < 1) {
        msg << "n_in = " << n_in << " violates n_in >= 1";
        throw std::invalid_argument(msg.str());
    }
    if (n_out < 4 || n_out % 2 != 0) {
        msg << "n_out = " << n_out << " violates n_out even and >= 4";
        throw std::invalid_argument(msg.str());
    }
    if (!(epsilon >= 0.0 && epsilon < 0.5)) {
        msg << "epsilon = " << epsilon << " violates 0 <= epsilon < 0.5";
        throw std::invalid_argument(msg.str());
    }
    if (!(r > 0.0)) {
        msg << "r = " << r << " violates r > 0";
        throw std::invalid_argument(msg.str());
    }
    if (r > 1.0 - 2.0 * epsilon) {
        msg << "r = " << r << " violates r <= 1 - 2*epsilon = " << 1.0 - 2.0 * epsilon;
        throw std::invalid_argument(msg.str());
    }
    if (!(alpha >= 0.0)) {
        msg << "alpha = " << alpha << " violates alpha >= 0";
        throw std::invalid_argument(msg.str());
    }
}

StateSpace make_space(const ModelParams& params) {
    params.validate();

    StateSpace space;
    space.params = params;
    space.n = params.bins_per_branch();
    space.comfort_lo = params.n_out / 2;
    space.comfort_hi = params.n_out / 2 + params.n_in - 1;

    const int m = space.state_count();
    space.on_indicator.assign(m, 0.0);
    space.comfort_indicator.assign(m, 0.0);
    for (int bin = 0; bin < space.n; ++bin) {
        space.on_indicator[space.on_index(bin)] = 1.0;
        if (space.in_comfort(bin)) {
            space.comfort_indicator[space.on_index(bin)] = 1.0;
            space.comfort_indicator[space.off_index(bin)] = 1.0;
        }
    }
    return space;
}

void Distribution::validate() const {
    double sum = 0.0;
    for (double v : rho) {
        if (v < 0.0) throw std::invalid_argument("distribution entry is negative");
        if (!std::isfinite(v)) throw std::invalid_argument("distribution entry is not finite");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("distribution mass deviates from 1 beyond 1e-12");
}

Distribution make_distribution(Vector rho) {
    Distribution d{std::move(rho)};
    d.validate();
    return d;
}

Distribution uniform_distribution(int state_count) {
    return Distribution{Vector(state_count, 1.0 / state_count)};
}

double consumption(const Distribution& rho, const StateSpace& space) {
    if (rho.size() != space.state_count())
        throw std::invalid_argument("consumption: distribution size does not match space");
    return dot(rho.rho, space.on_indicator);
}

}  // namespace tcl
