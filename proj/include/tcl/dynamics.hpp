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

#include "tcl/kernel.hpp"
#include "tcl/model.hpp"

namespace tcl {

/// Mean-field feedback law: q_down = f(r (2 N_up)^alpha),
/// q_up = f(r (2 (1 - N_up))^alpha) with f the saturation at 1 - 2*epsilon.
struct ControlLaw {
    double r = 0.1;
    double alpha = 0.0;
    double epsilon = 0.05;

    static ControlLaw from_params(const ModelParams& p) { return {p.r, p.alpha, p.epsilon}; }
};

struct Rates {
    double q_up = 0.0;
    double q_down = 0.0;
};

Rates control_rates(double n_up, const ControlLaw& law);

/// Consumption of a raw state vector under the fixed layout (on-branch
/// states occupy the first n entries).
double on_fraction(const Vector& rho, int n);

/// One application of the nonlinear map on a raw vector: measure N_up,
/// form the feedback rates, assemble the controlled matrix and multiply.
/// Total on any vector; used by the finite-difference linearization checks.
Vector nonlinear_map(const Vector& rho, const KernelComponents& components,
                     const ControlLaw& law);

/// One step of the nonlinear master equation with distribution validation.
Distribution step(const Distribution& rho, const KernelComponents& components,
                  const ControlLaw& law);

double l1_distance(const Vector& a, const Vector& b);
double l1_distance(const Distribution& a, const Distribution& b);

/// Comfort level C = sum_sigma rho_sigma C_sigma.
double comfort(const Distribution& rho, const StateSpace& space);

/// Observables recorded after every step (index k corresponds to time k+1)
/// plus distribution snapshots taken every `stride` steps.
struct Trajectory {
    std::vector<double> n_up;
    std::vector<double> h1;
    std::vector<double> c;
    std::vector<long> snapshot_times;
    std::vector<Distribution> snapshots;

    long steps() const { return static_cast<long>(n_up.size()); }
};

Trajectory simulate(const Distribution& rho0, long steps, const KernelComponents& components,
                    const ControlLaw& law, const StateSpace& space,
                    const Distribution& reference, int snapshot_stride = 1);

enum class Scenario { AllOff, AllOn, Small };

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);

/// Demand-response initial conditions. `AllOff` moves all on-branch mass to
/// the same-temperature off bin (synchronized switch-off), `AllOn` is the
/// mirror image, `Small` rescales the branch masses by (1 +- delta) and
/// renormalizes.
Distribution dr_scenario(const StateSpace& space, Scenario kind, const Distribution& base,
                         double delta = 0.1);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points_used = 0;
};

/// Least-squares slope of log(y) against t over the window [t_begin, t_end],
/// skipping samples at or below `floor`. `times` and `values` run in parallel.
SlopeFit fit_decay_slope(const std::vector<long>& times, const std::vector<double>& values,
                         long t_begin, long t_end, double floor = 1e-12);

/// Convenience overload for trajectory observables (index k <-> time k+1).
SlopeFit fit_decay_slope(const std::vector<double>& values, long t_begin, long t_end,
                         double floor = 1e-12);

}  // namespace tcl
