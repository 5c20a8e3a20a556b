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

#include "tcl/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcl {

void StochasticMatrix::validate() const {
    for (int j = 0; j < entries.cols(); ++j) {
        double sum = 0.0;
        for (int i = 0; i < entries.rows(); ++i) {
            if (entries(i, j) < -1e-12)
                throw std::invalid_argument("stochastic matrix has a negative entry");
            sum += entries(i, j);
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("stochastic matrix column sum deviates from 1");
    }
}

double saturate(double x, double epsilon) {
    if (x < 0.0) throw std::invalid_argument("saturate: rate must be nonnegative");
    if (!(epsilon >= 0.0 && epsilon < 0.5))
        throw std::invalid_argument("saturate: epsilon must satisfy 0 <= epsilon < 0.5");
    return std::min(x, 1.0 - 2.0 * epsilon);
}

KernelComponents build_components(const StateSpace& space) {
    const int n = space.n;
    const int m = space.state_count();
    const double eps = space.params.epsilon;

    KernelComponents k;
    k.n = n;
    k.epsilon = eps;
    k.p0 = Matrix(m, m, 0.0);
    k.p_down = Matrix(m, m, 0.0);
    k.p_up = Matrix(m, m, 0.0);

    // On devices cool (drift toward colder bins), off devices heat (drift
    // toward hotter bins). Drift or diffusion mass that would leave the grid
    // at the terminal bins x_- / x_+ switches branch at the same temperature.
    for (int i = 0; i < n; ++i) {
        const int src_on = space.on_index(i);
        const int drift_on = (i >= 1) ? space.on_index(i - 1) : space.off_index(0);
        const int diff_on = (i >= 2) ? space.on_index(i - 2) : space.off_index(i);
        k.p0(src_on, src_on) += eps;
        k.p0(drift_on, src_on) += 1.0 - 2.0 * eps;
        k.p0(diff_on, src_on) += eps;

        const int src_off = space.off_index(i);
        const int drift_off = (i <= n - 2) ? space.off_index(i + 1) : space.on_index(n - 1);
        const int diff_off = (i <= n - 3) ? space.off_index(i + 2) : space.on_index(i);
        k.p0(src_off, src_off) += eps;
        k.p0(drift_off, src_off) += 1.0 - 2.0 * eps;
        k.p0(diff_off, src_off) += eps;
    }

    // Poisson switching corrections: -1 on the drift-one-step-deeper entry,
    // +1 on the same-temperature opposite-branch entry. At the terminal bins
    // the two coincide and cancel (the load turns branch there regardless of
    // the rate), leaving n_out/2 - 1 rate-dependent columns per side.
    for (int i = 0; i < space.comfort_lo; ++i) {
        const int src = space.on_index(i);
        const int drift = (i >= 1) ? space.on_index(i - 1) : space.off_index(0);
        k.p_down(drift, src) -= 1.0;
        k.p_down(space.off_index(i), src) += 1.0;
    }
    for (int i = space.comfort_hi + 1; i < n; ++i) {
        const int src = space.off_index(i);
        const int drift = (i <= n - 2) ? space.off_index(i + 1) : space.on_index(n - 1);
        k.p_up(drift, src) -= 1.0;
        k.p_up(space.on_index(i), src) += 1.0;
    }

    return k;
}

namespace {

StochasticMatrix assemble(const KernelComponents& k, double q_up, double q_down) {
    const int m = k.p0.rows();
    StochasticMatrix p{Matrix(m, m, 0.0)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            p.entries(i, j) = k.p0(i, j) + q_up * k.p_up(i, j) + q_down * k.p_down(i, j);
    return p;
}

}  // namespace

StochasticMatrix assemble_static(const KernelComponents& components, double r) {
    const double cap = 1.0 - 2.0 * components.epsilon;
    if (r < 0.0 || r > cap) {
        std::ostringstream msg;
        msg << "assemble_static: r = " << r << " outside [0, 1 - 2*epsilon] with cap " << cap;
        throw std::invalid_argument(msg.str());
    }
    return assemble(components, r, r);
}

StochasticMatrix assemble_controlled(const KernelComponents& components, double q_up,
                                     double q_down) {
    const double cap = 1.0 - 2.0 * components.epsilon;
    for (double q : {q_up, q_down}) {
        if (q < 0.0 || q > cap) {
            std::ostringstream msg;
            msg << "assemble_controlled: rate " << q << " outside [0, 1 - 2*epsilon] with cap "
                << cap;
            throw std::invalid_argument(msg.str());
        }
    }
    return assemble(components, q_up, q_down);
}

StochasticMatrix swap_operator(const StateSpace& space) {
    const int n = space.n;
    StochasticMatrix t{Matrix(2 * n, 2 * n, 0.0)};
    for (int i = 0; i < n; ++i) {
        t.entries(space.off_index(n - 1 - i), space.on_index(i)) = 1.0;
        t.entries(space.on_index(n - 1 - i), space.off_index(i)) = 1.0;
    }
    return t;
}

Vector apply_swap(const StateSpace& space, const Vector& rho) {
    const int n = space.n;
    if (static_cast<int>(rho.size()) != 2 * n)
        throw std::invalid_argument("apply_swap: size mismatch");
    Vector out(2 * n, 0.0);
    for (int i = 0; i < n; ++i) {
        out[space.off_index(n - 1 - i)] = rho[space.on_index(i)];
        out[space.on_index(n - 1 - i)] = rho[space.off_index(i)];
    }
    return out;
}

}  // namespace tcl
