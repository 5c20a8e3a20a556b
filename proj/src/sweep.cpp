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

#include "tcl/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "tcl/reduced.hpp"

namespace tcl {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool admissible(const ModelParams& p) {
    try {
        p.validate();
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

int default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

std::vector<double> default_alpha_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 100; ++i) g.push_back(0.5 * i);
    return g;
}

std::vector<double> default_r_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 20; ++i) g.push_back(0.02 * i);
    return g;
}

std::vector<GapRow> sweep_gap(const SweepGrid& grid, int threads, SweepOutcome* outcome) {
    SweepOutcome local;
    std::vector<int> n_outs = grid.n_out_values;
    if (n_outs.empty()) n_outs.push_back(grid.fixed.n_out);

    struct Point {
        ModelParams params;
    };
    std::vector<Point> points;
    for (double alpha : grid.alpha_values) {
        for (double r : grid.r_values) {
            for (int n_out : n_outs) {
                ModelParams p = grid.fixed;
                p.alpha = alpha;
                p.r = r;
                p.n_out = n_out;
                if (!admissible(p)) {
                    ++local.skipped;
                    continue;
                }
                points.push_back({p});
            }
        }
    }

    std::vector<GapRow> rows(points.size());
    std::atomic<int> failures{0};
    parallel_for(static_cast<int>(points.size()), threads, [&](int i) {
        const ModelParams& p = points[i].params;
        GapRow& row = rows[i];
        row.alpha = p.alpha;
        row.r = p.r;
        row.n_out = p.n_out;
        try {
            const Analysis a = analyze(p);
            const GapReport g = gap(a.spectrum);
            row.gap = g.gap;
            row.regime = g.super_relaxation ? "super-relaxation" : "standard";
        } catch (const std::exception&) {
            row.gap = kNan;
            row.regime = "failed";
            row.failed = true;
            failures.fetch_add(1);
        }
    });
    local.failures = failures.load();
    if (outcome) *outcome = local;
    return rows;
}

std::vector<SpectrumSweepRow> sweep_spectrum(const std::vector<double>& alpha_values,
                                             const ModelParams& fixed, int modes, int threads,
                                             SweepOutcome* outcome) {
    SweepOutcome local;
    std::vector<double> alphas;
    for (double alpha : alpha_values) {
        ModelParams p = fixed;
        p.alpha = alpha;
        if (admissible(p))
            alphas.push_back(alpha);
        else
            ++local.skipped;
    }

    std::vector<std::vector<SpectrumSweepRow>> blocks(alphas.size());
    std::atomic<int> failures{0};
    parallel_for(static_cast<int>(alphas.size()), threads, [&](int i) {
        ModelParams p = fixed;
        p.alpha = alphas[i];
        auto& block = blocks[i];
        try {
            const Analysis a = analyze(p);
            std::vector<int> order;
            for (int k = 0; k < a.spectrum.size(); ++k)
                if (a.spectrum.family[k] != ModeFamily::Stationary) order.push_back(k);
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                const double rx = a.spectrum.relaxation[x].real();
                const double ry = a.spectrum.relaxation[y].real();
                if (rx != ry) return rx < ry;
                return std::abs(a.spectrum.relaxation[x].imag()) <
                       std::abs(a.spectrum.relaxation[y].imag());
            });
            const int take = std::min<int>(modes, static_cast<int>(order.size()));
            for (int k = 0; k < take; ++k) {
                SpectrumSweepRow row;
                row.alpha = alphas[i];
                row.index = k + 1;
                row.re_lambda = a.spectrum.relaxation[order[k]].real();
                row.im_lambda = a.spectrum.relaxation[order[k]].imag();
                row.family = family_name(a.spectrum.family[order[k]]);
                block.push_back(row);
            }
        } catch (const std::exception&) {
            SpectrumSweepRow row;
            row.alpha = alphas[i];
            row.index = 1;
            row.re_lambda = kNan;
            row.im_lambda = kNan;
            row.family = "failed";
            row.failed = true;
            block.push_back(row);
            failures.fetch_add(1);
        }
    });

    std::vector<SpectrumSweepRow> rows;
    for (auto& block : blocks)
        for (auto& row : block) rows.push_back(std::move(row));
    local.failures = failures.load();
    if (outcome) *outcome = local;
    return rows;
}

std::vector<StabilityRow> sweep_stability(const SweepGrid& grid, int threads,
                                          SweepOutcome* outcome) {
    SweepOutcome local;
    struct Point {
        ModelParams params;
    };
    std::vector<Point> points;
    for (double alpha : grid.alpha_values) {
        for (double r : grid.r_values) {
            ModelParams p = grid.fixed;
            p.alpha = alpha;
            p.r = r;
            if (!admissible(p)) {
                ++local.skipped;
                continue;
            }
            points.push_back({p});
        }
    }

    std::vector<StabilityRow> rows(points.size());
    std::atomic<int> failures{0};
    parallel_for(static_cast<int>(points.size()), threads, [&](int i) {
        const ModelParams& p = points[i].params;
        StabilityRow& row = rows[i];
        row.alpha = p.alpha;
        row.r = p.r;
        const int n = p.bins_per_branch();
        row.frontier_alpha1 = alpha1_estimate(n, p.n_out, p.r);
        row.frontier_alpha2 = frontier_alpha(n, p.n_out, p.r);
        const ReducedParams rp{n, p.n_out, p.r, p.alpha, p.epsilon};
        row.mu = linear_factor_saturated(rp) ? saturated_factor(rp) : linear_factor(rp);
        try {
            const Analysis a = analyze(p);
            row.regime = regime_name(stability(a.spectrum).regime);
        } catch (const std::exception&) {
            row.regime = "failed";
            row.failed = true;
            failures.fetch_add(1);
        }
    });
    local.failures = failures.load();
    if (outcome) *outcome = local;
    return rows;
}

std::vector<ComfortRow> sweep_comfort(const std::vector<double>& r_values,
                                      const ModelParams& fixed, int threads,
                                      SweepOutcome* outcome) {
    SweepOutcome local;
    std::vector<double> rs;
    for (double r : r_values) {
        ModelParams p = fixed;
        p.r = r;
        if (admissible(p))
            rs.push_back(r);
        else
            ++local.skipped;
    }

    std::vector<ComfortRow> rows(rs.size());
    std::atomic<int> failures{0};
    parallel_for(static_cast<int>(rs.size()), threads, [&](int i) {
        ModelParams p = fixed;
        p.r = rs[i];
        ComfortRow& row = rows[i];
        row.r = rs[i];
        try {
            const StateSpace space = make_space(p);
            const KernelComponents k = build_components(space);
            const StochasticMatrix mat = assemble_static(k, p.r);
            const SteadyStateResult st = steady_state(mat, p.epsilon);
            row.c_steady = comfort(st.rho, space);
        } catch (const std::exception&) {
            row.c_steady = kNan;
            row.failed = true;
            failures.fetch_add(1);
        }
    });
    local.failures = failures.load();
    if (outcome) *outcome = local;
    return rows;
}

std::vector<RefineRow> refine_levels(const ModelParams& base, int levels, SweepOutcome* outcome) {
    if (levels < 2) throw std::invalid_argument("refine_levels: need at least two levels");
    SweepOutcome local;
    std::vector<RefineRow> rows;
    for (int level = 0; level < levels; ++level) {
        ModelParams p = base;
        const int factor = 1 << level;
        p.n_in = base.n_in * factor;
        p.n_out = base.n_out * factor;
        p.r = base.r / factor;
        p.validate();  // the deepest level must be admissible

        RefineRow row;
        row.level = level;
        row.n_in = p.n_in;
        row.n_out = p.n_out;
        row.r = p.r;
        const double rescale = factor;  // lambda / Delta t with Delta t = r_level / r_base
        try {
            const Analysis a = analyze(p);
            const GapReport g = gap(a.spectrum);
            row.gap = g.gap * rescale;
            row.min_re_sf = g.min_re_sf * rescale;
            row.min_re_wf = g.min_re_wf * rescale;
        } catch (const std::exception&) {
            row.gap = row.min_re_sf = row.min_re_wf = kNan;
            row.failed = true;
            ++local.failures;
        }
        rows.push_back(row);
    }
    if (outcome) *outcome = local;
    return rows;
}

}  // namespace tcl
