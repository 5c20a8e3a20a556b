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

#include "tcl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tcl/eig.hpp"
#include "tcl/linalg.hpp"

namespace tcl {

namespace {

// Branch swap on a raw vector, derived from the fixed layout (first half of
// the indices is the on branch, cold to hot).
Vector swap_raw(const Vector& rho) {
    const int n = static_cast<int>(rho.size()) / 2;
    Vector out(2 * n, 0.0);
    for (int i = 0; i < n; ++i) {
        out[n + (n - 1 - i)] = rho[i];
        out[n - 1 - i] = rho[n + i];
    }
    return out;
}

double steady_residual(const Matrix& p, const Vector& rho) {
    const Vector prho = p * rho;
    return l1_distance(prho, rho);
}

}  // namespace

std::string family_name(ModeFamily f) {
    switch (f) {
        case ModeFamily::Stationary: return "stationary";
        case ModeFamily::Ghost: return "ghost";
        case ModeFamily::Significant: return "significant";
        case ModeFamily::Unclassified: break;
    }
    return "unclassified";
}

int Spectrum::stationary_index() const {
    for (int i = 0; i < size(); ++i)
        if (family[i] == ModeFamily::Stationary) return i;
    return -1;
}

SteadyStateResult steady_state(const StochasticMatrix& p, double epsilon,
                               const SpectralOptions& opts) {
    const int m = p.entries.rows();
    if (m < 2 || p.entries.cols() != m)
        throw std::invalid_argument("steady_state: matrix must be square with size >= 2");

    SteadyStateResult result;
    result.possibly_degenerate = (epsilon == 0.0);

    Vector rho(m, 1.0 / m);
    double residual = steady_residual(p.entries, rho);
    long iter = 0;
    for (; iter < opts.power_iteration_cap && residual > 1e-14; ++iter) {
        rho = p.entries * rho;
        double mass = 0.0;
        for (double v : rho) mass += v;
        for (double& v : rho) v /= mass;
        residual = steady_residual(p.entries, rho);
    }
    result.iterations = iter;

    if (residual > 1e-14) {
        // Null-space solve: (p - I) rho = 0 with the last row replaced by the
        // normalization sum(rho) = 1.
        Matrix a = p.entries;
        for (int i = 0; i < m; ++i) a(i, i) -= 1.0;
        for (int j = 0; j < m; ++j) a(m - 1, j) = 1.0;
        Vector b(m, 0.0);
        b[m - 1] = 1.0;
        rho = solve_dense(std::move(a), std::move(b));

        // Deep out-of-comfort bins carry mass at the round-off floor; clip
        // sign noise there and renormalize.
        double peak = 0.0;
        for (double v : rho) peak = std::max(peak, std::abs(v));
        for (double& v : rho) {
            if (v < 0.0) {
                if (-v > 1e-12 * peak)
                    throw std::runtime_error("steady_state: direct solve produced negative mass");
                v = 0.0;
            }
        }
        double mass = 0.0;
        for (double v : rho) mass += v;
        for (double& v : rho) v /= mass;
        result.used_direct_solve = true;
    }

    // Symmetrize under the branch swap; the unique steady state is swap
    // invariant and this pins its consumption at exactly 1/2.
    const Vector swapped = swap_raw(rho);
    for (int i = 0; i < m; ++i) rho[i] = 0.5 * (rho[i] + swapped[i]);

    result.residual = steady_residual(p.entries, rho);
    if (result.residual >= 1e-12) {
        std::ostringstream msg;
        msg << "steady_state: residual " << result.residual
            << " did not reach 1e-12 within the iteration budget";
        throw std::runtime_error(msg.str());
    }
    result.rho = make_distribution(std::move(rho));
    return result;
}

Matrix linearized_matrix(const KernelComponents& components, const ControlLaw& law,
                         const Distribution& rho_st) {
    const int n = components.n;
    const int m = 2 * n;
    if (rho_st.size() != m)
        throw std::invalid_argument("linearized_matrix: steady state size mismatch");

    const double n_up = on_fraction(rho_st.rho, n);
    if (std::abs(n_up - 0.5) > 1e-8)
        throw std::invalid_argument(
            "linearized_matrix: steady-state consumption deviates from 1/2 beyond 1e-8");

    // w = (p_down - p_up) rho_st; V = 2 alpha r w U^T
    Vector w(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j)
            s += (components.p_down(i, j) - components.p_up(i, j)) * rho_st.rho[j];
        w[i] = s;
    }

    const double feedback = 2.0 * law.alpha * law.r;
    Matrix s_mat(m, m, 0.0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double p = components.p0(i, j) +
                             law.r * (components.p_down(i, j) + components.p_up(i, j));
            const double v = (j < n) ? feedback * w[i] : 0.0;
            s_mat(i, j) = p + v;
        }
    }
    return s_mat;
}

Spectrum eigendecompose(const Matrix& s) {
    const int m = s.rows();
    EigenSystem eig = eig_general(s);

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double ma = std::abs(eig.values[a]);
        const double mb = std::abs(eig.values[b]);
        if (ma != mb) return ma > mb;
        if (eig.values[a].real() != eig.values[b].real())
            return eig.values[a].real() > eig.values[b].real();
        return eig.values[a].imag() > eig.values[b].imag();
    });

    Spectrum spec;
    spec.eigenvalues.resize(m);
    spec.right_vectors.resize(m);
    spec.relaxation.resize(m);
    spec.family.assign(m, ModeFamily::Unclassified);
    for (int k = 0; k < m; ++k) {
        spec.eigenvalues[k] = eig.values[order[k]];
        spec.right_vectors[k] = std::move(eig.right_vectors[order[k]]);
        const Complex lam = spec.eigenvalues[k];
        spec.relaxation[k] = Complex(-std::log(std::abs(lam)), std::arg(lam));
    }

    // Left vectors as the inverse of the right-vector matrix, which makes
    // the pair biorthonormal to solver precision.
    CMatrix psi(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) psi(i, j) = spec.right_vectors[j][i];
    CMatrix phi = invert(psi);
    spec.left_vectors.assign(m, CVector(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) spec.left_vectors[i][j] = phi(i, j);

    // Residual diagnostic.
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
        const CVector& v = spec.right_vectors[k];
        for (int i = 0; i < m; ++i) {
            Complex acc(0.0, 0.0);
            for (int j = 0; j < m; ++j) acc += s(i, j) * v[j];
            acc -= spec.eigenvalues[k] * v[i];
            worst = std::max(worst, std::abs(acc));
        }
    }
    spec.max_residual = worst;
    return spec;
}

void classify_families(Spectrum& spectrum, const Vector& on_indicator,
                       const SpectralOptions& opts) {
    const int m = spectrum.size();
    if (static_cast<int>(on_indicator.size()) != m)
        throw std::invalid_argument("classify_families: indicator size mismatch");

    for (int k = 0; k < m; ++k) {
        if (std::abs(spectrum.eigenvalues[k] - Complex(1.0, 0.0)) < opts.stationary_tol) {
            spectrum.family[k] = ModeFamily::Stationary;
            continue;
        }
        Complex coupling(0.0, 0.0);
        double norm1 = 0.0;
        for (int i = 0; i < m; ++i) {
            coupling += on_indicator[i] * spectrum.right_vectors[k][i];
            norm1 += std::abs(spectrum.right_vectors[k][i]);
        }
        spectrum.family[k] = (std::abs(coupling) < opts.family_tol * norm1)
                                 ? ModeFamily::Ghost
                                 : ModeFamily::Significant;
    }
}

GapReport gap(const Spectrum& spectrum, const SpectralOptions& opts) {
    double min_sf = std::numeric_limits<double>::infinity();
    double min_wf = std::numeric_limits<double>::infinity();
    bool has_sf = false;
    for (int k = 0; k < spectrum.size(); ++k) {
        switch (spectrum.family[k]) {
            case ModeFamily::Stationary:
                continue;
            case ModeFamily::Unclassified:
                throw std::logic_error("gap: spectrum has unclassified modes");
            case ModeFamily::Significant:
                has_sf = true;
                min_sf = std::min(min_sf, spectrum.relaxation[k].real());
                min_wf = std::min(min_wf, spectrum.relaxation[k].real());
                break;
            case ModeFamily::Ghost:
                min_wf = std::min(min_wf, spectrum.relaxation[k].real());
                break;
        }
    }
    if (!has_sf)
        throw std::runtime_error("gap: significant family is empty (degenerate spectrum)");

    GapReport report;
    report.min_re_sf = min_sf;
    report.min_re_wf = min_wf;
    report.gap = min_sf - min_wf;
    report.super_relaxation = report.gap > opts.gap_tol;
    return report;
}

std::string regime_name(StabilityRegime r) {
    switch (r) {
        case StabilityRegime::Stable: return "stable";
        case StabilityRegime::Alternating: return "alternating";
        case StabilityRegime::Unstable: return "unstable";
    }
    return "?";
}

StabilityReport stability(const Spectrum& spectrum, const SpectralOptions& opts) {
    StabilityReport report;
    Complex dominant(0.0, 0.0);
    for (int k = 0; k < spectrum.size(); ++k) {
        if (spectrum.family[k] == ModeFamily::Stationary) continue;
        const double mod = std::abs(spectrum.eigenvalues[k]);
        if (mod > report.max_modulus) {
            report.max_modulus = mod;
            dominant = spectrum.eigenvalues[k];
        }
    }
    if (report.max_modulus > 1.0 + opts.stability_tol) {
        report.regime = StabilityRegime::Unstable;
    } else if (std::abs(dominant.imag()) <= opts.stability_tol && dominant.real() < 0.0) {
        report.regime = StabilityRegime::Alternating;
    } else {
        report.regime = StabilityRegime::Stable;
    }
    return report;
}

namespace {

struct TransitionScanner {
    const KernelComponents* components;
    const Distribution* rho_st;
    double r;
    double epsilon;
    Vector on_indicator;
    SpectralOptions opts;

    struct Probe {
        int real_sf_count = 0;        // pair collisions birth real significant modes
        bool unstable = false;
        int negative_real_count = 0;  // parity tracks sign(det S)
    };

    Probe probe(double alpha) const {
        const ControlLaw law{r, alpha, epsilon};
        Matrix s = linearized_matrix(*components, law, *rho_st);
        Spectrum spec = eigendecompose(s);
        classify_families(spec, on_indicator, opts);

        Probe out;
        bool has_sf = false;
        for (int k = 0; k < spec.size(); ++k) {
            const Complex lam = spec.eigenvalues[k];
            if (spec.family[k] != ModeFamily::Stationary) {
                if (std::abs(lam) > 1.0 + opts.stability_tol) out.unstable = true;
            }
            if (lam.imag() == 0.0 && lam.real() < 0.0) ++out.negative_real_count;
            if (spec.family[k] == ModeFamily::Significant) {
                has_sf = true;
                if (lam.imag() == 0.0) ++out.real_sf_count;
            }
        }
        if (!has_sf)
            throw std::runtime_error("alpha_transitions: significant family is empty");
        return out;
    }
};

double bisect_threshold(const TransitionScanner& scanner, double lo, double hi,
                        const std::function<bool(const TransitionScanner::Probe&)>& flipped) {
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (flipped(scanner.probe(mid)))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

AlphaTransitions alpha_transitions(const ModelParams& base, const std::vector<double>& alpha_grid,
                                   const SpectralOptions& opts) {
    if (alpha_grid.size() < 2)
        throw std::invalid_argument("alpha_transitions: grid needs at least two points");
    for (size_t i = 1; i < alpha_grid.size(); ++i)
        if (!(alpha_grid[i] > alpha_grid[i - 1]))
            throw std::invalid_argument("alpha_transitions: grid must be strictly increasing");
    if (alpha_grid.front() < 0.0)
        throw std::invalid_argument("alpha_transitions: alpha must be nonnegative");

    ModelParams params = base;
    params.alpha = 0.0;
    const StateSpace space = make_space(params);
    const KernelComponents components = build_components(space);
    const StochasticMatrix p = assemble_static(components, params.r);
    const SteadyStateResult steady = steady_state(p, params.epsilon, opts);

    TransitionScanner scanner{&components, &steady.rho, params.r, params.epsilon,
                              space.on_indicator, opts};

    std::vector<TransitionScanner::Probe> probes;
    probes.reserve(alpha_grid.size());
    for (double a : alpha_grid) probes.push_back(scanner.probe(a));

    AlphaTransitions result;
    const int base_parity = probes.front().negative_real_count % 2;
    const int base_real_sf = probes.front().real_sf_count;

    for (size_t i = 1; i < alpha_grid.size(); ++i) {
        if (!result.alpha0 && probes[i - 1].real_sf_count <= base_real_sf &&
            probes[i].real_sf_count > base_real_sf) {
            result.alpha0 = bisect_threshold(
                scanner, alpha_grid[i - 1], alpha_grid[i],
                [base_real_sf](const TransitionScanner::Probe& p) {
                    return p.real_sf_count > base_real_sf;
                });
        }
        if (!result.alpha1 && probes[i].negative_real_count % 2 != base_parity &&
            probes[i - 1].negative_real_count % 2 == base_parity) {
            result.alpha1 = bisect_threshold(
                scanner, alpha_grid[i - 1], alpha_grid[i],
                [base_parity](const TransitionScanner::Probe& p) {
                    return p.negative_real_count % 2 != base_parity;
                });
        }
        if (!result.alpha2 && !probes[i - 1].unstable && probes[i].unstable) {
            result.alpha2 = bisect_threshold(
                scanner, alpha_grid[i - 1], alpha_grid[i],
                [](const TransitionScanner::Probe& p) { return p.unstable; });
        }
    }
    return result;
}

Analysis analyze(const ModelParams& params, const SpectralOptions& opts) {
    Analysis a;
    a.space = make_space(params);
    a.components = build_components(a.space);
    a.p = assemble_static(a.components, params.r);
    a.steady = steady_state(a.p, params.epsilon, opts);
    a.s = linearized_matrix(a.components, ControlLaw::from_params(params), a.steady.rho);
    a.spectrum = eigendecompose(a.s);
    classify_families(a.spectrum, a.space.on_indicator, opts);
    return a;
}

}  // namespace tcl
