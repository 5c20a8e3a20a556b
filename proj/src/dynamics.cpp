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

#include "tcl/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace tcl {

Rates control_rates(double n_up, const ControlLaw& law) {
    if (n_up < 0.0 || n_up > 1.0)
        throw std::invalid_argument("control_rates: consumption must lie in [0, 1]");
    Rates q;
    q.q_down = saturate(law.r * std::pow(2.0 * n_up, law.alpha), law.epsilon);
    q.q_up = saturate(law.r * std::pow(2.0 * (1.0 - n_up), law.alpha), law.epsilon);
    return q;
}

double on_fraction(const Vector& rho, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rho[i];
    return s;
}

Vector nonlinear_map(const Vector& rho, const KernelComponents& components,
                     const ControlLaw& law) {
    const int n = components.n;
    const int m = 2 * n;
    if (static_cast<int>(rho.size()) != m)
        throw std::invalid_argument("nonlinear_map: vector size does not match kernel");

    double n_up = on_fraction(rho, n);
    // The map is defined for probability vectors; clamp the measured
    // consumption so finite-difference probes slightly outside the simplex
    // stay evaluable.
    n_up = std::min(std::max(n_up, 0.0), 1.0);
    const Rates q = control_rates(n_up, law);

    Vector out(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) {
            const double pij = components.p0(i, j) + q.q_up * components.p_up(i, j) +
                               q.q_down * components.p_down(i, j);
            s += pij * rho[j];
        }
        out[i] = s;
    }
    return out;
}

Distribution step(const Distribution& rho, const KernelComponents& components,
                  const ControlLaw& law) {
    rho.validate();
    return make_distribution(nonlinear_map(rho.rho, components, law));
}

double l1_distance(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: length mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double l1_distance(const Distribution& a, const Distribution& b) {
    return l1_distance(a.rho, b.rho);
}

double comfort(const Distribution& rho, const StateSpace& space) {
    if (rho.size() != space.state_count())
        throw std::invalid_argument("comfort: distribution size does not match space");
    return dot(rho.rho, space.comfort_indicator);
}

Trajectory simulate(const Distribution& rho0, long steps, const KernelComponents& components,
                    const ControlLaw& law, const StateSpace& space,
                    const Distribution& reference, int snapshot_stride) {
    rho0.validate();
    reference.validate();
    if (steps < 0) throw std::invalid_argument("simulate: steps must be nonnegative");
    if (snapshot_stride < 1) throw std::invalid_argument("simulate: stride must be >= 1");

    Trajectory traj;
    traj.n_up.reserve(steps);
    traj.h1.reserve(steps);
    traj.c.reserve(steps);

    Vector rho = rho0.rho;
    for (long t = 1; t <= steps; ++t) {
        rho = nonlinear_map(rho, components, law);
        // The exact map conserves mass; dividing out the accumulated
        // rounding keeps multi-thousand-step runs on the simplex.
        double mass = 0.0;
        for (double v : rho) mass += v;
        for (double& v : rho) v /= mass;

        const Distribution current{rho};
        traj.n_up.push_back(on_fraction(rho, components.n));
        traj.h1.push_back(l1_distance(rho, reference.rho));
        traj.c.push_back(dot(rho, space.comfort_indicator));
        if (t % snapshot_stride == 0) {
            traj.snapshot_times.push_back(t);
            traj.snapshots.push_back(current);
        }
    }
    return traj;
}

Scenario parse_scenario(const std::string& name) {
    if (name == "all_off") return Scenario::AllOff;
    if (name == "all_on") return Scenario::AllOn;
    if (name == "small") return Scenario::Small;
    throw std::invalid_argument("unknown scenario '" + name + "' (expected all_off, all_on or small)");
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::AllOff: return "all_off";
        case Scenario::AllOn: return "all_on";
        case Scenario::Small: return "small";
    }
    return "?";
}

Distribution dr_scenario(const StateSpace& space, Scenario kind, const Distribution& base,
                         double delta) {
    base.validate();
    const int n = space.n;
    Vector out(base.rho);

    switch (kind) {
        case Scenario::AllOff:
            for (int i = 0; i < n; ++i) {
                out[space.off_index(i)] += out[space.on_index(i)];
                out[space.on_index(i)] = 0.0;
            }
            break;
        case Scenario::AllOn:
            for (int i = 0; i < n; ++i) {
                out[space.on_index(i)] += out[space.off_index(i)];
                out[space.off_index(i)] = 0.0;
            }
            break;
        case Scenario::Small: {
            if (delta < -1.0 || delta > 1.0)
                throw std::invalid_argument("dr_scenario: delta must lie in [-1, 1]");
            double mass = 0.0;
            for (int i = 0; i < 2 * n; ++i) {
                const double factor = space.on_indicator[i] > 0.5 ? 1.0 + delta : 1.0 - delta;
                out[i] = base.rho[i] * factor;
                mass += out[i];
            }
            for (double& v : out) v /= mass;
            break;
        }
    }
    return make_distribution(std::move(out));
}

SlopeFit fit_decay_slope(const std::vector<long>& times, const std::vector<double>& values,
                         long t_begin, long t_end, double floor) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_decay_slope: length mismatch");
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int count = 0;
    for (size_t k = 0; k < times.size(); ++k) {
        const long t = times[k];
        const double y = values[k];
        if (t < t_begin || t > t_end) continue;
        if (!(y > floor)) continue;
        const double ly = std::log(y);
        st += t;
        sy += ly;
        stt += static_cast<double>(t) * t;
        sty += t * ly;
        ++count;
    }
    SlopeFit fit;
    fit.points_used = count;
    if (count < 2) return fit;
    const double denom = count * stt - st * st;
    fit.slope = (count * sty - st * sy) / denom;
    fit.intercept = (sy - fit.slope * st) / count;
    return fit;
}

SlopeFit fit_decay_slope(const std::vector<double>& values, long t_begin, long t_end,
                         double floor) {
    std::vector<long> times(values.size());
    for (size_t k = 0; k < values.size(); ++k) times[k] = static_cast<long>(k) + 1;
    return fit_decay_slope(times, values, t_begin, t_end, floor);
}

}  // namespace tcl
