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

namespace tcl {

/// Parameters of the two-variable variational model: a uniform ansatz per
/// branch collapses the master equation to one scalar map for the
/// consumption.
struct ReducedParams {
    int n = 30;      // total bins per branch
    int n_out = 18;  // out-of-comfort bins per branch
    double r = 0.1;
    double alpha = 0.0;
    double epsilon = 0.05;

    void validate() const;
};

/// The scalar consumption map
///   N(t+1) = [ (n-2)/n - k (f_dn + f_up) ] N(t) + [ 1/n + k f_up ],
/// with k = (n_out/2 - 1)/n, f_dn = f(r (2N)^alpha), f_up the mirror term.
/// Returns the raw map value; the ansatz is approximate, so the output may
/// leave [0, 1] slightly in extreme regimes.
double reduced_step(double n_up, const ReducedParams& p);

/// Iterates the map, clamping each value into [0, 1]; *clamped_steps
/// (optional) counts how often clamping fired.
std::vector<double> reduced_iterate(double n_up0, long steps, const ReducedParams& p,
                                    long* clamped_steps = nullptr);

/// Linearized factor at the fixed point N = 1/2:
///   mu = (n-2)/n - 2 (n_out/2 - 1)/n (1 + alpha) r.
/// Assumes the unsaturated branch of f; see linear_factor_saturated.
double linear_factor(const ReducedParams& p);

/// True when r >= 1 - 2*epsilon, i.e. when f is already saturated at the
/// fixed point and the unsaturated linearization does not apply. The
/// saturated slope is then (n-2)/n - 2 ((n_out/2-1)/n) (1-2 epsilon), with
/// no alpha dependence.
bool linear_factor_saturated(const ReducedParams& p);
double saturated_factor(const ReducedParams& p);

enum class ReducedRegime { Speedup, AlternatingDecay, Unstable };

std::string reduced_regime_name(ReducedRegime r);

/// Speedup for 0 <= mu <= 1, alternating decay for -1 <= mu < 0, unstable
/// for mu < -1. mu > 1 cannot arise from admissible parameters and is
/// rejected as out of theory.
ReducedRegime classify_regime(double mu);

/// Closed-form threshold estimates:
///   alpha1 ~ (n-2)/(r (n_out-2)) - 1,  alpha2 ~ 2(n-1)/(r (n_out-2)) - 1.
double alpha1_estimate(int n, int n_out, double r);
double alpha2_estimate(int n, int n_out, double r);

/// Stability frontier: the alpha solving mu = -1,
///   alpha = (n-1)/((n_out/2 - 1) r) - 1.
/// Coincides with alpha2_estimate for every parameter set.
double frontier_alpha(int n, int n_out, double r);

}  // namespace tcl
