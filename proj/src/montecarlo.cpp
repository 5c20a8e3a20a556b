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

#include "tcl/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace tcl {

namespace {

constexpr std::uint64_t kInitStream = ~std::uint64_t{0};

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-column sampler over the at most five nonzero transition targets.
struct ColumnSampler {
    std::vector<double> cum;
    std::vector<std::int32_t> dest;

    std::int32_t draw(double u) const {
        for (size_t k = 0; k + 1 < cum.size(); ++k)
            if (u < cum[k]) return dest[k];
        return dest.back();
    }
};

std::vector<ColumnSampler> build_samplers(const KernelComponents& components, double q_up,
                                          double q_down) {
    const int m = 2 * components.n;
    std::vector<ColumnSampler> samplers(m);
    for (int j = 0; j < m; ++j) {
        ColumnSampler& s = samplers[j];
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const double p = components.p0(i, j) + q_up * components.p_up(i, j) +
                             q_down * components.p_down(i, j);
            if (p <= 0.0) continue;
            acc += p;
            s.cum.push_back(acc);
            s.dest.push_back(static_cast<std::int32_t>(i));
        }
        if (s.dest.empty())
            throw std::runtime_error("montecarlo: empty transition column");
    }
    return samplers;
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t h = mix64(seed ^ (stream * 0xC2B2AE3D27D4EB4FULL));
    h = mix64(h ^ (counter * 0x9E3779B97F4A7C15ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

AgentEnsemble make_ensemble(const StateSpace& space, const Distribution& initial, int agents,
                            std::uint64_t seed) {
    initial.validate();
    if (initial.size() != space.state_count())
        throw std::invalid_argument("make_ensemble: distribution size does not match space");
    if (agents < 1) throw std::invalid_argument("make_ensemble: need at least one agent");

    const int m = space.state_count();
    Vector cdf(m, 0.0);
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        acc += initial.rho[i];
        cdf[i] = acc;
    }

    AgentEnsemble ensemble;
    ensemble.seed = seed;
    ensemble.t = 0;
    ensemble.states.resize(agents);
    for (int k = 0; k < agents; ++k) {
        const double u = uniform01(seed, kInitStream, static_cast<std::uint64_t>(k)) * acc;
        int lo = 0, hi = m - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (u < cdf[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        ensemble.states[k] = static_cast<std::int32_t>(lo);
    }
    return ensemble;
}

Distribution empirical_distribution(const AgentEnsemble& ensemble, int state_count) {
    Vector hist(state_count, 0.0);
    const double weight = 1.0 / ensemble.agents();
    for (std::int32_t s : ensemble.states) {
        if (s < 0 || s >= state_count)
            throw std::invalid_argument("empirical_distribution: state index out of range");
        hist[s] += weight;
    }
    return Distribution{std::move(hist)};
}

void mc_step(AgentEnsemble& ensemble, const KernelComponents& components, const ControlLaw& law,
             int threads) {
    const int n = components.n;
    const int count = ensemble.agents();

    // Shared broadcast rates from the empirical consumption, fixed before
    // any agent moves.
    long on_count = 0;
    for (std::int32_t s : ensemble.states)
        if (s < n) ++on_count;
    const double n_up = static_cast<double>(on_count) / count;
    const Rates q = control_rates(n_up, law);
    const std::vector<ColumnSampler> samplers = build_samplers(components, q.q_up, q.q_down);

    std::vector<std::int32_t> next(count);
    const std::uint64_t stream = static_cast<std::uint64_t>(ensemble.t);
    auto advance = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            const double u = uniform01(ensemble.seed, stream, static_cast<std::uint64_t>(k));
            next[k] = samplers[ensemble.states[k]].draw(u);
        }
    };

    if (threads <= 1 || count < 4096) {
        advance(0, count);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (count + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const int begin = w * chunk;
            const int end = std::min(count, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(advance, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    ensemble.states = std::move(next);
    ensemble.t += 1;
}

Trajectory mc_simulate(AgentEnsemble& ensemble, long steps, const KernelComponents& components,
                       const ControlLaw& law, const StateSpace& space,
                       const Distribution& reference, int threads) {
    reference.validate();
    Trajectory traj;
    traj.n_up.reserve(steps);
    traj.h1.reserve(steps);
    traj.c.reserve(steps);
    for (long t = 1; t <= steps; ++t) {
        mc_step(ensemble, components, law, threads);
        const Distribution hist = empirical_distribution(ensemble, space.state_count());
        traj.n_up.push_back(consumption(hist, space));
        traj.h1.push_back(l1_distance(hist.rho, reference.rho));
        traj.c.push_back(comfort(hist, space));
    }
    return traj;
}

}  // namespace tcl
