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

#include <functional>
#include <string>
#include <vector>

#include "tcl/model.hpp"
#include "tcl/spectral.hpp"

namespace tcl {

/// Cartesian sweep grid; empty n_out_values means "use fixed.n_out".
/// Rows come out in canonical order (alpha, then r, then n_out) regardless
/// of worker scheduling. Inadmissible points are skipped and counted;
/// numerical failures yield NaN rows and are counted separately.
struct SweepGrid {
    std::vector<double> alpha_values;
    std::vector<double> r_values;
    std::vector<int> n_out_values;
    ModelParams fixed;
};

struct SweepOutcome {
    int failures = 0;
    int skipped = 0;
};

/// Runs fn(0..count-1) on a bounded worker pool. fn must be safe to call
/// concurrently for distinct indices.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

int default_thread_count();

struct GapRow {
    double alpha = 0.0;
    double r = 0.0;
    int n_out = 0;
    double gap = 0.0;
    std::string regime;
    bool failed = false;
};

std::vector<GapRow> sweep_gap(const SweepGrid& grid, int threads, SweepOutcome* outcome = nullptr);

struct SpectrumSweepRow {
    double alpha = 0.0;
    int index = 0;
    double re_lambda = 0.0;
    double im_lambda = 0.0;
    std::string family;
    bool failed = false;
};

/// First `modes` non-stationary relaxation constants per alpha, ordered by
/// ascending real part (slowest first).
std::vector<SpectrumSweepRow> sweep_spectrum(const std::vector<double>& alpha_values,
                                             const ModelParams& fixed, int modes, int threads,
                                             SweepOutcome* outcome = nullptr);

struct StabilityRow {
    double alpha = 0.0;
    double r = 0.0;
    std::string regime;
    double mu = 0.0;
    double frontier_alpha1 = 0.0;
    double frontier_alpha2 = 0.0;
    bool failed = false;
};

std::vector<StabilityRow> sweep_stability(const SweepGrid& grid, int threads,
                                          SweepOutcome* outcome = nullptr);

struct ComfortRow {
    double r = 0.0;
    double c_steady = 0.0;
    bool failed = false;
};

std::vector<ComfortRow> sweep_comfort(const std::vector<double>& r_values,
                                      const ModelParams& fixed, int threads,
                                      SweepOutcome* outcome = nullptr);

/// Refinement toward the continuous limit: per level, n_in and n_out double
/// while r halves and epsilon stays fixed. Relaxation summaries are rescaled
/// by the per-level time step (Delta t proportional to r) so levels are
/// comparable.
struct RefineRow {
    int level = 0;
    int n_in = 0;
    int n_out = 0;
    double r = 0.0;
    double gap = 0.0;
    double min_re_sf = 0.0;
    double min_re_wf = 0.0;
    bool failed = false;
};

std::vector<RefineRow> refine_levels(const ModelParams& base, int levels,
                                     SweepOutcome* outcome = nullptr);

/// Default figure-axis grids: alpha in [0, 50] step 0.5 and r in
/// [0.02, 0.4] step 0.02, bracketing every regime of interest.
std::vector<double> default_alpha_grid();
std::vector<double> default_r_grid();

}  // namespace tcl
