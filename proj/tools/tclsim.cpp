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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tcl/io.hpp"
#include "tcl/kernel.hpp"
#include "tcl/montecarlo.hpp"
#include "tcl/reduced.hpp"
#include "tcl/spectral.hpp"
#include "tcl/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonOptions {
    std::string config_path;
    std::optional<int> n_in, n_out;
    std::optional<double> epsilon, r, alpha;
    std::string out_path;
    int threads = tcl::default_thread_count();
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key=value parameter file");
    cmd->add_option("--n-in", opt.n_in, "comfort-zone bins per branch");
    cmd->add_option("--n-out", opt.n_out, "out-of-comfort bins per branch (even)");
    cmd->add_option("--epsilon", opt.epsilon, "diffusion probability per step");
    cmd->add_option("--r", opt.r, "base Poisson switching probability");
    cmd->add_option("--alpha", opt.alpha, "degree of mean-field nonlinearity");
    cmd->add_option("-o,--out", opt.out_path, "output CSV path (default stdout)");
    cmd->add_option("--threads", opt.threads, "worker threads for sweeps");
}

struct Resolved {
    tcl::ModelParams params;
    tcl::Config config;
};

// defaults <- config file <- command-line flags
Resolved resolve(const CommonOptions& opt) {
    Resolved res;
    if (!opt.config_path.empty()) res.config = tcl::load_config(opt.config_path);
    const tcl::Config& cfg = res.config;
    tcl::ModelParams& p = res.params;
    if (cfg.has("n_in")) p.n_in = static_cast<int>(tcl::parse_long(cfg.get("n_in"), "n_in"));
    if (cfg.has("n_out")) p.n_out = static_cast<int>(tcl::parse_long(cfg.get("n_out"), "n_out"));
    if (cfg.has("epsilon")) p.epsilon = tcl::parse_double(cfg.get("epsilon"), "epsilon");
    if (cfg.has("r")) p.r = tcl::parse_double(cfg.get("r"), "r");
    if (cfg.has("alpha")) p.alpha = tcl::parse_double(cfg.get("alpha"), "alpha");
    if (opt.n_in) p.n_in = *opt.n_in;
    if (opt.n_out) p.n_out = *opt.n_out;
    if (opt.epsilon) p.epsilon = *opt.epsilon;
    if (opt.r) p.r = *opt.r;
    if (opt.alpha) p.alpha = *opt.alpha;
    return res;
}

long config_long(const tcl::Config& cfg, const std::string& key, long fallback) {
    return cfg.has(key) ? tcl::parse_long(cfg.get(key), key) : fallback;
}

std::string config_string(const tcl::Config& cfg, const std::string& key,
                          const std::string& fallback) {
    return cfg.has(key) ? cfg.get(key) : fallback;
}

std::string join_args(int argc, char** argv) {
    std::ostringstream os;
    for (int i = 0; i < argc; ++i) {
        if (i) os << ' ';
        os << argv[i];
    }
    return os.str();
}

std::vector<std::pair<std::string, std::string>> param_pairs(const tcl::ModelParams& p) {
    return {{"n_in", std::to_string(p.n_in)},
            {"n_out", std::to_string(p.n_out)},
            {"epsilon", tcl::format_number(p.epsilon)},
            {"r", tcl::format_number(p.r)},
            {"alpha", tcl::format_number(p.alpha)}};
}

int with_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return kExitOk;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open output path '" << path << "'\n";
        return kExitUsage;
    }
    writer(out);
    if (!out.good()) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return kExitUsage;
    }
    return kExitOk;
}

int finish_sweep(const tcl::SweepOutcome& outcome) {
    if (outcome.skipped > 0)
        std::cerr << "note: skipped " << outcome.skipped << " inadmissible grid point(s)\n";
    if (outcome.failures > 0) {
        std::cerr << "warning: " << outcome.failures
                  << " grid point(s) failed numerically (NaN rows emitted)\n";
        return kExitNumerical;
    }
    return kExitOk;
}

std::vector<double> grid_from(const tcl::Config& cfg, const std::string& key,
                              const std::optional<std::string>& flag,
                              const std::vector<double>& fallback) {
    if (flag) return tcl::parse_number_list(*flag);
    if (cfg.has(key)) return tcl::parse_number_list(cfg.get(key));
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analyzer and simulator for quantized ensembles of "
                 "thermostatically controlled loads under mean-field feedback"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("tclsim ") + tcl::kToolVersion);
    const std::string command_line = join_args(argc, argv);

    // ---- trajectory ----
    CommonOptions traj_opt;
    long traj_steps = 1000;
    std::string traj_scenario = "";
    double traj_delta = 0.1;
    auto* traj = app.add_subcommand("trajectory", "nonlinear master-equation trajectory CSV");
    add_common(traj, traj_opt);
    traj->add_option("--steps", traj_steps, "number of time steps");
    traj->add_option("--scenario", traj_scenario, "all_off | all_on | small");
    traj->add_option("--delta", traj_delta, "perturbation size for the small scenario");

    // ---- sweep-gap ----
    CommonOptions gap_opt;
    std::optional<std::string> gap_alpha_flag, gap_r_flag, gap_nout_flag;
    auto* gapcmd = app.add_subcommand("sweep-gap", "super-relaxation gap over (alpha, r[, n_out])");
    add_common(gapcmd, gap_opt);
    gapcmd->add_option("--grid-alpha", gap_alpha_flag, "alpha values: list or start:stop:step");
    gapcmd->add_option("--grid-r", gap_r_flag, "r values: list or start:stop:step");
    gapcmd->add_option("--grid-n-out", gap_nout_flag, "n_out values: list or start:stop:step");

    // ---- sweep-spectrum ----
    CommonOptions spsw_opt;
    std::optional<std::string> spsw_alpha_flag;
    int spsw_modes = 4;
    auto* spsw = app.add_subcommand("sweep-spectrum", "leading relaxation constants over alpha");
    add_common(spsw, spsw_opt);
    spsw->add_option("--grid-alpha", spsw_alpha_flag, "alpha values: list or start:stop:step");
    spsw->add_option("--modes", spsw_modes, "modes per alpha (default 4)");

    // ---- stability-map ----
    CommonOptions stab_opt;
    std::optional<std::string> stab_alpha_flag, stab_r_flag;
    auto* stab = app.add_subcommand("stability-map", "stability phase diagram over (alpha, r)");
    add_common(stab, stab_opt);
    stab->add_option("--grid-alpha", stab_alpha_flag, "alpha values: list or start:stop:step");
    stab->add_option("--grid-r", stab_r_flag, "r values: list or start:stop:step");

    // ---- comfort ----
    CommonOptions comf_opt;
    std::optional<std::string> comf_r_flag;
    auto* comf = app.add_subcommand("comfort", "steady-state comfort level over r");
    add_common(comf, comf_opt);
    comf->add_option("--grid-r", comf_r_flag, "r values: list or start:stop:step");

    // ---- refine ----
    CommonOptions refi_opt;
    int refi_levels = 3;
    auto* refi = app.add_subcommand("refine", "continuum-limit refinement study");
    add_common(refi, refi_opt);
    refi->add_option("--levels", refi_levels, "refinement levels (>= 2)");

    // ---- montecarlo ----
    CommonOptions mc_opt;
    long mc_steps = 500;
    long mc_agents = 10000;
    std::uint64_t mc_seed = 1;
    std::string mc_scenario = "";
    auto* mc = app.add_subcommand("montecarlo", "agent-based run with master-equation comparison");
    add_common(mc, mc_opt);
    mc->add_option("--steps", mc_steps, "number of time steps");
    mc->add_option("--agents", mc_agents, "population size");
    mc->add_option("--seed", mc_seed, "RNG seed");
    mc->add_option("--scenario", mc_scenario, "all_off | all_on | small");

    // ---- dump-kernel ----
    CommonOptions dump_opt;
    std::string dump_which = "static";
    auto* dump = app.add_subcommand("dump-kernel", "kernel matrix as row,col,value CSV");
    add_common(dump, dump_opt);
    dump->add_option("--matrix", dump_which, "p0 | p_down | p_up | static | swap");

    // ---- spectrum ----
    CommonOptions spec_opt;
    auto* spec = app.add_subcommand("spectrum", "full classified spectrum at one parameter set");
    add_common(spec, spec_opt);

    // ---- frontier ----
    CommonOptions fron_opt;
    std::optional<std::string> fron_r_flag;
    auto* fron = app.add_subcommand("frontier", "reduced-model threshold estimates over r");
    add_common(fron, fron_opt);
    fron->add_option("--grid-r", fron_r_flag, "r values: list or start:stop:step");

    // ---- reduced ----
    CommonOptions redu_opt;
    long redu_steps = 200;
    double redu_n_up0 = 0.45;
    auto* redu = app.add_subcommand("reduced", "iterate the scalar consumption map");
    add_common(redu, redu_opt);
    redu->add_option("--steps", redu_steps, "number of iterations");
    redu->add_option("--n-up0", redu_n_up0, "initial consumption");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*traj) {
            const Resolved res = resolve(traj_opt);
            if (!traj->count("--steps")) traj_steps = config_long(res.config, "steps", traj_steps);
            if (traj_scenario.empty())
                traj_scenario = config_string(res.config, "scenario", "all_off");
            const tcl::Scenario kind = tcl::parse_scenario(traj_scenario);
            const tcl::Analysis a = tcl::analyze(res.params);
            const tcl::Distribution rho0 =
                tcl::dr_scenario(a.space, kind, a.steady.rho, traj_delta);
            const tcl::Trajectory t =
                tcl::simulate(rho0, traj_steps, a.components,
                              tcl::ControlLaw::from_params(res.params), a.space, a.steady.rho);
            auto params = param_pairs(res.params);
            params.emplace_back("steps", std::to_string(traj_steps));
            params.emplace_back("scenario", traj_scenario);
            return with_output(traj_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, params);
                tcl::write_trajectory_csv(out, t);
            });
        }

        if (*gapcmd) {
            const Resolved res = resolve(gap_opt);
            tcl::SweepGrid grid;
            grid.fixed = res.params;
            grid.alpha_values =
                grid_from(res.config, "grid.alpha", gap_alpha_flag, tcl::default_alpha_grid());
            grid.r_values = grid_from(res.config, "grid.r", gap_r_flag, tcl::default_r_grid());
            std::optional<std::string> nout_text = gap_nout_flag;
            if (!nout_text && res.config.has("grid.n_out")) nout_text = res.config.get("grid.n_out");
            if (nout_text)
                for (double v : tcl::parse_number_list(*nout_text))
                    grid.n_out_values.push_back(static_cast<int>(v));
            tcl::SweepOutcome outcome;
            const auto rows = tcl::sweep_gap(grid, gap_opt.threads, &outcome);
            const int code = with_output(gap_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, param_pairs(res.params));
                out << "alpha,r,n_out,gap,regime\n";
                for (const auto& row : rows)
                    out << tcl::format_number(row.alpha) << ',' << tcl::format_number(row.r) << ','
                        << row.n_out << ',' << tcl::format_number(row.gap) << ',' << row.regime
                        << "\n";
            });
            return code != kExitOk ? code : finish_sweep(outcome);
        }

        if (*spsw) {
            const Resolved res = resolve(spsw_opt);
            const auto alphas =
                grid_from(res.config, "grid.alpha", spsw_alpha_flag, tcl::default_alpha_grid());
            tcl::SweepOutcome outcome;
            const auto rows =
                tcl::sweep_spectrum(alphas, res.params, spsw_modes, spsw_opt.threads, &outcome);
            const int code = with_output(spsw_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, param_pairs(res.params));
                out << "alpha,index,re_lambda,im_lambda,family\n";
                for (const auto& row : rows)
                    out << tcl::format_number(row.alpha) << ',' << row.index << ','
                        << tcl::format_number(row.re_lambda) << ','
                        << tcl::format_number(row.im_lambda) << ',' << row.family << "\n";
            });
            return code != kExitOk ? code : finish_sweep(outcome);
        }

        if (*stab) {
            const Resolved res = resolve(stab_opt);
            tcl::SweepGrid grid;
            grid.fixed = res.params;
            grid.alpha_values =
                grid_from(res.config, "grid.alpha", stab_alpha_flag, tcl::default_alpha_grid());
            grid.r_values = grid_from(res.config, "grid.r", stab_r_flag, tcl::default_r_grid());
            tcl::SweepOutcome outcome;
            const auto rows = tcl::sweep_stability(grid, stab_opt.threads, &outcome);
            const int code = with_output(stab_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, param_pairs(res.params));
                out << "alpha,r,regime,mu,frontier_alpha1,frontier_alpha2\n";
                for (const auto& row : rows)
                    out << tcl::format_number(row.alpha) << ',' << tcl::format_number(row.r) << ','
                        << row.regime << ',' << tcl::format_number(row.mu) << ','
                        << tcl::format_number(row.frontier_alpha1) << ','
                        << tcl::format_number(row.frontier_alpha2) << "\n";
            });
            return code != kExitOk ? code : finish_sweep(outcome);
        }

        if (*comf) {
            const Resolved res = resolve(comf_opt);
            const auto rs = grid_from(res.config, "grid.r", comf_r_flag, tcl::default_r_grid());
            tcl::SweepOutcome outcome;
            const auto rows = tcl::sweep_comfort(rs, res.params, comf_opt.threads, &outcome);
            const int code = with_output(comf_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, param_pairs(res.params));
                out << "r,C_steady\n";
                for (const auto& row : rows)
                    out << tcl::format_number(row.r) << ',' << tcl::format_number(row.c_steady)
                        << "\n";
            });
            return code != kExitOk ? code : finish_sweep(outcome);
        }

        if (*refi) {
            const Resolved res = resolve(refi_opt);
            tcl::SweepOutcome outcome;
            const auto rows = tcl::refine_levels(res.params, refi_levels, &outcome);
            auto params = param_pairs(res.params);
            params.emplace_back("levels", std::to_string(refi_levels));
            const int code = with_output(refi_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, params);
                out << "level,n_in,n_out,r,gap,min_re_SF,min_re_WF\n";
                for (const auto& row : rows)
                    out << row.level << ',' << row.n_in << ',' << row.n_out << ','
                        << tcl::format_number(row.r) << ',' << tcl::format_number(row.gap) << ','
                        << tcl::format_number(row.min_re_sf) << ','
                        << tcl::format_number(row.min_re_wf) << "\n";
            });
            return code != kExitOk ? code : finish_sweep(outcome);
        }

        if (*mc) {
            const Resolved res = resolve(mc_opt);
            if (!mc->count("--steps")) mc_steps = config_long(res.config, "steps", mc_steps);
            if (!mc->count("--agents")) mc_agents = config_long(res.config, "agents", mc_agents);
            if (!mc->count("--seed"))
                mc_seed = static_cast<std::uint64_t>(config_long(res.config, "seed",
                                                                 static_cast<long>(mc_seed)));
            if (mc_scenario.empty()) mc_scenario = config_string(res.config, "scenario", "all_off");
            const tcl::Scenario kind = tcl::parse_scenario(mc_scenario);
            const tcl::Analysis a = tcl::analyze(res.params);
            const tcl::ControlLaw law = tcl::ControlLaw::from_params(res.params);
            const tcl::Distribution rho0 = tcl::dr_scenario(a.space, kind, a.steady.rho);
            tcl::AgentEnsemble ensemble =
                tcl::make_ensemble(a.space, rho0, static_cast<int>(mc_agents), mc_seed);
            const tcl::Trajectory emp = tcl::mc_simulate(ensemble, mc_steps, a.components, law,
                                                         a.space, a.steady.rho, mc_opt.threads);
            const tcl::Trajectory me =
                tcl::simulate(rho0, mc_steps, a.components, law, a.space, a.steady.rho);
            auto params = param_pairs(res.params);
            params.emplace_back("steps", std::to_string(mc_steps));
            params.emplace_back("agents", std::to_string(mc_agents));
            params.emplace_back("seed", std::to_string(mc_seed));
            params.emplace_back("scenario", mc_scenario);
            return with_output(mc_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, params);
                tcl::write_mc_trajectory_csv(out, emp, me);
            });
        }

        if (*dump) {
            const Resolved res = resolve(dump_opt);
            const tcl::StateSpace space = tcl::make_space(res.params);
            const tcl::KernelComponents k = tcl::build_components(space);
            tcl::Matrix matrix;
            if (dump_which == "p0")
                matrix = k.p0;
            else if (dump_which == "p_down")
                matrix = k.p_down;
            else if (dump_which == "p_up")
                matrix = k.p_up;
            else if (dump_which == "static")
                matrix = tcl::assemble_static(k, res.params.r).entries;
            else if (dump_which == "swap")
                matrix = tcl::swap_operator(space).entries;
            else {
                std::cerr << "error: unknown matrix '" << dump_which << "'\n";
                return kExitUsage;
            }
            auto params = param_pairs(res.params);
            params.emplace_back("matrix", dump_which);
            return with_output(dump_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, params);
                tcl::write_matrix_csv(out, matrix);
            });
        }

        if (*spec) {
            const Resolved res = resolve(spec_opt);
            const tcl::Analysis a = tcl::analyze(res.params);
            return with_output(spec_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, param_pairs(res.params));
                tcl::write_spectrum_csv(out, a.spectrum);
            });
        }

        if (*fron) {
            const Resolved res = resolve(fron_opt);
            const auto rs = grid_from(res.config, "grid.r", fron_r_flag, tcl::default_r_grid());
            const int n = res.params.bins_per_branch();
            return with_output(fron_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, param_pairs(res.params));
                out << "r,alpha1_est,alpha2_est\n";
                for (double r : rs)
                    out << tcl::format_number(r) << ','
                        << tcl::format_number(tcl::alpha1_estimate(n, res.params.n_out, r)) << ','
                        << tcl::format_number(tcl::alpha2_estimate(n, res.params.n_out, r))
                        << "\n";
            });
        }

        if (*redu) {
            const Resolved res = resolve(redu_opt);
            if (!redu->count("--steps")) redu_steps = config_long(res.config, "steps", redu_steps);
            const tcl::ReducedParams rp{res.params.bins_per_branch(), res.params.n_out,
                                        res.params.r, res.params.alpha, res.params.epsilon};
            rp.validate();
            long clamped = 0;
            const auto series = tcl::reduced_iterate(redu_n_up0, redu_steps, rp, &clamped);
            if (clamped > 0)
                std::cerr << "note: map value clamped into [0,1] on " << clamped << " step(s)\n";
            auto params = param_pairs(res.params);
            params.emplace_back("steps", std::to_string(redu_steps));
            params.emplace_back("n_up0", tcl::format_number(redu_n_up0));
            return with_output(redu_opt.out_path, [&](std::ostream& out) {
                tcl::write_csv_preamble(out, command_line, params);
                out << "t,N_up\n";
                for (size_t t = 0; t < series.size(); ++t)
                    out << t << ',' << tcl::format_number(series[t]) << "\n";
            });
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }

    return kExitUsage;
}
