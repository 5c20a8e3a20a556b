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

#pragma once

#include <string>
#include <vector>

#include "tcl/matrix.hpp"

namespace tcl {

/// Scalar parameters of the quantized load ensemble.
///
/// Each branch (device on / device off) carries n_in temperature bins inside
/// the comfort zone and n_out outside it, split evenly between the cold and
/// hot sides. epsilon is the per-step diffusion probability, r the base
/// Poisson switching probability and alpha the degree of mean-field
/// nonlinearity in the feedback law.
struct ModelParams {
    int n_in = 12;
    int n_out = 18;
    double epsilon = 0.05;
    double r = 0.1;
    double alpha = 0.0;

    int bins_per_branch() const { return n_in + n_out; }  // n
    int state_count() const { return 2 * bins_per_branch(); }

    /// Throws std::invalid_argument naming the violated bound.
    void validate() const;
};

/// Index layout of the 2n discrete states.
///
/// On-branch states occupy global indices 0..n-1, ordered coldest to hottest;
/// off-branch states occupy n..2n-1 with the same temperature ordering.
/// Temperatures are pure bin indices; the dynamics is shift invariant so no
/// physical units are stored. The threshold bins x_down / x_up are counted as
/// part of the comfort zone (comfort_lo and comfort_hi are inclusive).
struct StateSpace {
    ModelParams params;
    int n = 0;           // bins per branch
    int comfort_lo = 0;  // first comfort bin, = n_out/2
    int comfort_hi = 0;  // last comfort bin, = n_out/2 + n_in - 1
    Vector on_indicator;       // U, 1 on the on-branch
    Vector comfort_indicator;  // C, 1 inside the comfort zone on either branch

    int state_count() const { return 2 * n; }
    int on_index(int bin) const { return bin; }
    int off_index(int bin) const { return n + bin; }
    bool is_on(int state) const { return state < n; }
    int bin_of(int state) const { return state < n ? state : state - n; }
    bool in_comfort(int bin) const { return bin >= comfort_lo && bin <= comfort_hi; }
};

StateSpace make_space(const ModelParams& params);

/// Probability mass function over the 2n states.
struct Distribution {
    Vector rho;

    int size() const { return static_cast<int>(rho.size()); }
    double operator[](int i) const { return rho[i]; }

    /// Throws std::invalid_argument if any entry is negative or the total
    /// mass deviates from 1 by more than 1e-12.
    void validate() const;
};

Distribution make_distribution(Vector rho);
Distribution uniform_distribution(int state_count);

/// Fraction of loads switched on, N_up = sum_sigma rho_sigma U_sigma.
double consumption(const Distribution& rho, const StateSpace& space);

}  // namespace tcl
