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

#include <cstdint>
#include <vector>

#include "tcl/dynamics.hpp"
#include "tcl/kernel.hpp"
#include "tcl/model.hpp"

namespace tcl {

/// Stateless counter-based uniform draw on [0, 1). Each (seed, stream,
/// counter) triple is an independent value, so agents can be advanced in any
/// order, or split across any number of workers, with identical results.
double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Finite population of load agents. Agent k's randomness at step t comes
/// from the (seed, t, k) counter stream; `t` advances with every mc_step.
struct AgentEnsemble {
    std::vector<std::int32_t> states;
    std::uint64_t seed = 0;
    std::int64_t t = 0;

    int agents() const { return static_cast<int>(states.size()); }
};

/// Samples `agents` initial states independently from `initial`.
AgentEnsemble make_ensemble(const StateSpace& space, const Distribution& initial, int agents,
                            std::uint64_t seed);

Distribution empirical_distribution(const AgentEnsemble& ensemble, int state_count);

/// One synchronous step: the shared rate pair is computed from the empirical
/// consumption before any agent moves, then every agent samples its next
/// state from its current column of the controlled matrix.
void mc_step(AgentEnsemble& ensemble, const KernelComponents& components, const ControlLaw& law,
             int threads = 1);

/// Iterates mc_step, recording the empirical N_up, comfort and the L1
/// distance of the empirical histogram from `reference`.
Trajectory mc_simulate(AgentEnsemble& ensemble, long steps, const KernelComponents& components,
                       const ControlLaw& law, const StateSpace& space,
                       const Distribution& reference, int threads = 1);

}  // namespace tcl
