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

// Test-only oracles, written independently of the library code paths they
// check: literal transition tables for the smallest space, a column builder
// transcribed from the four-outcome transition enumeration, a
// characteristic-polynomial root finder, and a hand-rolled null-space solve.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "tcl/matrix.hpp"
#include "tcl/model.hpp"

namespace oracle {

// ---- literal kernel tables for n_in = 1, n_out = 4 (n = 5, m = 10) ----
// Global indices: on-branch bins 0..4, off-branch bins 5..9 (bin b -> 5+b).
// Comfort zone is the single bin 2; bins 0,1 are the cold side, 3,4 the hot
// side; bin 0 is x_-, bin 4 is x_+.

inline tcl::Matrix tiny_p0(double e) {
    tcl::Matrix m(10, 10, 0.0);
    const double d = 1.0 - 2.0 * e;
    // on-branch sources (cooling, drift toward bin 0; overflow switches branch)
    m(0, 0) = e;           // stay
    m(5, 0) = d + e;       // drift + two-step both leave the grid at x_-
    m(0, 1) = d;
    m(1, 1) = e;
    m(6, 1) = e;           // two-step overflow from the penultimate bin
    m(0, 2) = e;
    m(1, 2) = d;
    m(2, 2) = e;
    m(1, 3) = e;
    m(2, 3) = d;
    m(3, 3) = e;
    m(2, 4) = e;
    m(3, 4) = d;
    m(4, 4) = e;
    // off-branch sources (heating, drift toward bin 4)
    m(5, 5) = e;
    m(6, 5) = d;
    m(7, 5) = e;
    m(6, 6) = e;
    m(7, 6) = d;
    m(8, 6) = e;
    m(7, 7) = e;
    m(8, 7) = d;
    m(9, 7) = e;
    m(3, 8) = e;           // two-step overflow at the hot end
    m(8, 8) = e;
    m(9, 8) = d;
    m(4, 9) = d + e;       // drift + two-step both leave the grid at x_+
    m(9, 9) = e;
    return m;
}

inline tcl::Matrix tiny_p_down() {
    tcl::Matrix m(10, 10, 0.0);
    // only the non-terminal cold-side on-branch column carries the pair;
    // at bin 0 the -1/+1 coincide on the same entry and cancel
    m(0, 1) = -1.0;
    m(6, 1) = 1.0;
    return m;
}

inline tcl::Matrix tiny_p_up() {
    tcl::Matrix m(10, 10, 0.0);
    m(9, 8) = -1.0;
    m(3, 8) = 1.0;
    return m;
}

// ---- column oracle from the four-outcome enumeration ----
// A load in the out-of-comfort zone stays with probability eps, moves one
// step deeper with 1 - 2 eps - q, two steps deeper with eps and switches
// branch at the same temperature with q; inside the comfort zone (and on the
// returning side) the switching terms are absent. Valid only for source bins
// whose whole footprint stays on the grid.
inline tcl::Vector enumerated_column(const tcl::StateSpace& space, bool on_branch, int bin,
                                     double q_up, double q_down) {
    const int n = space.n;
    tcl::Vector col(2 * n, 0.0);
    const double e = space.params.epsilon;
    if (on_branch) {
        if (bin < 2) throw std::logic_error("enumerated_column: footprint leaves the grid");
        col[space.on_index(bin)] += e;
        col[space.on_index(bin - 2)] += e;
        if (bin < space.comfort_lo) {
            col[space.on_index(bin - 1)] += 1.0 - 2.0 * e - q_down;
            col[space.off_index(bin)] += q_down;
        } else {
            col[space.on_index(bin - 1)] += 1.0 - 2.0 * e;
        }
    } else {
        if (bin > n - 3) throw std::logic_error("enumerated_column: footprint leaves the grid");
        col[space.off_index(bin)] += e;
        col[space.off_index(bin + 2)] += e;
        if (bin > space.comfort_hi) {
            col[space.off_index(bin + 1)] += 1.0 - 2.0 * e - q_up;
            col[space.on_index(bin)] += q_up;
        } else {
            col[space.off_index(bin + 1)] += 1.0 - 2.0 * e;
        }
    }
    return col;
}

// ---- characteristic polynomial (Faddeev-LeVerrier) in long double ----
// Returns monic coefficients c[0..n], p(z) = sum c[k] z^k with c[n] = 1.
inline std::vector<long double> char_poly(const tcl::Matrix& a) {
    const int n = a.rows();
    std::vector<std::vector<long double>> m(n, std::vector<long double>(n, 0.0L));
    std::vector<long double> c(n + 1, 0.0L);
    c[n] = 1.0L;
    // M starts as the identity; each round M <- A*M + c*I
    std::vector<std::vector<long double>> id(n, std::vector<long double>(n, 0.0L));
    for (int i = 0; i < n; ++i) id[i][i] = 1.0L;
    auto mul = [&](const std::vector<std::vector<long double>>& x) {
        std::vector<std::vector<long double>> y(n, std::vector<long double>(n, 0.0L));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) y[i][j] += (long double)a(i, k) * x[k][j];
        return y;
    };
    m = id;
    for (int k = 1; k <= n; ++k) {
        m = mul(m);
        long double tr = 0.0L;
        for (int i = 0; i < n; ++i) tr += m[i][i];
        c[n - k] = -tr / k;
        for (int i = 0; i < n; ++i) m[i][i] += c[n - k];
    }
    return c;
}

// ---- Durand-Kerner root finder for monic polynomials ----
inline std::vector<std::complex<long double>> poly_roots(const std::vector<long double>& c) {
    using CL = std::complex<long double>;
    const int n = static_cast<int>(c.size()) - 1;
    auto eval = [&](CL z) {
        CL v(0.0L, 0.0L);
        for (int k = n; k >= 0; --k) v = v * z + c[k];
        return v;
    };
    std::vector<CL> z(n);
    CL seed(0.4L, 0.9L);
    CL w(1.0L, 0.0L);
    for (int i = 0; i < n; ++i) {
        w *= seed;
        z[i] = w;
    }
    for (int iter = 0; iter < 2000; ++iter) {
        long double worst = 0.0L;
        for (int i = 0; i < n; ++i) {
            CL denom(1.0L, 0.0L);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            const CL delta = eval(z[i]) / denom;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-15L) break;
    }
    return z;
}

// ---- independent dense null-space solve for the steady state ----
inline tcl::Vector nullspace_steady(const tcl::Matrix& p) {
    const int n = p.rows();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = p(i, j) - (i == j ? 1.0 : 0.0);
    for (int j = 0; j < n; ++j) a[n - 1][j] = 1.0;  // normalization row
    a[n - 1][n] = 1.0;
    // Gauss-Jordan with partial pivoting
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
        std::swap(a[col], a[piv]);
        const double d = a[col][col];
        for (int j = col; j <= n; ++j) a[col][j] /= d;
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = a[i][col];
            if (f == 0.0) continue;
            for (int j = col; j <= n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    tcl::Vector rho(n);
    for (int i = 0; i < n; ++i) rho[i] = a[i][n];
    return rho;
}

// Deterministic parameter sampler shared by property tests.
struct ParamSampler {
    std::mt19937_64 rng;
    explicit ParamSampler(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }

    tcl::ModelParams next() {
        tcl::ModelParams p;
        p.n_in = 1 + static_cast<int>(uniform(0.0, 14.0));
        p.n_out = 4 + 2 * static_cast<int>(uniform(0.0, 9.0));
        p.epsilon = uniform(0.01, 0.45);
        p.r = uniform(0.05, 1.0) * (1.0 - 2.0 * p.epsilon);
        p.alpha = uniform(0.0, 30.0);
        return p;
    }
};

}  // namespace oracle
