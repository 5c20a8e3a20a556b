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

#include "tcl/matrix.hpp"
#include "tcl/model.hpp"

namespace tcl {

/// The three building blocks of the transition kernel.
///
/// p0 holds drift, diffusion and the forced branch switch at the terminal
/// bins; p_down and p_up hold the Poisson switching corrections for the
/// on->off and off->on transitions. Every column of p0 sums to 1 and every
/// column of p_down / p_up sums to 0, which is what keeps the assembled
/// matrix stochastic for any admissible rate.
struct KernelComponents {
    Matrix p0;
    Matrix p_down;
    Matrix p_up;
    int n = 0;            // bins per branch
    double epsilon = 0.0; // cap on switching rates is 1 - 2*epsilon
};

/// Column-stochastic transition matrix: entry (sigma, sigma') is the
/// probability of the transition sigma' -> sigma.
struct StochasticMatrix {
    Matrix entries;

    /// Throws if any entry is below -1e-12 or a column sum deviates from 1
    /// by more than 1e-12.
    void validate() const;
};

/// Saturation keeping switching probabilities admissible: min(x, 1 - 2*epsilon).
/// Negative x is rejected.
double saturate(double x, double epsilon);

KernelComponents build_components(const StateSpace& space);

/// p = p0 + r*p_up + r*p_down. Accepts 0 <= r <= 1 - 2*epsilon; the error
/// message names the cap.
StochasticMatrix assemble_static(const KernelComponents& components, double r);

/// p(t) = p0 + q_up*p_up + q_down*p_down. Rates above the cap are rejected;
/// callers are expected to saturate first.
StochasticMatrix assemble_controlled(const KernelComponents& components, double q_up,
                                     double q_down);

/// Permutation swapping the on/off branches and reversing the temperature
/// order: on-branch bin i <-> off-branch bin n-1-i. Satisfies T^2 = 1 and
/// commutes with the static kernel, which forces steady-state consumption 1/2.
StochasticMatrix swap_operator(const StateSpace& space);

Vector apply_swap(const StateSpace& space, const Vector& rho);

}  // namespace tcl
