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

#include <optional>
#include <string>
#include <vector>

#include "tcl/dynamics.hpp"
#include "tcl/kernel.hpp"
#include "tcl/model.hpp"

namespace tcl {

enum class ModeFamily { Unclassified, Stationary, Ghost, Significant };

std::string family_name(ModeFamily f);

/// Eigendecomposition of the linearized transition matrix, sorted by
/// descending eigenvalue modulus with conjugate pairs adjacent (positive
/// imaginary part first). Left and right vectors are biorthonormal,
/// sum_sigma phi^i_sigma psi^j_sigma = delta_ij, and the relaxation
/// constants are lambda_i = -log|Lambda_i| + i arg(Lambda_i).
struct Spectrum {
    CVector eigenvalues;
    std::vector<CVector> right_vectors;
    std::vector<CVector> left_vectors;
    CVector relaxation;
    std::vector<ModeFamily> family;
    double max_residual = 0.0;  // max over modes of ||S psi - Lambda psi||_inf

    int size() const { return static_cast<int>(eigenvalues.size()); }
    /// Index of the unique stationary mode, or -1 when none is labeled.
    int stationary_index() const;
};

struct SpectralOptions {
    double family_tol = 1e-9;      // relative: |U.psi| < tol * ||psi||_1 means ghost
    double stationary_tol = 1e-9;  // |Lambda - 1| < tol means stationary
    double gap_tol = 1e-9;
    double stability_tol = 1e-9;
    long power_iteration_cap = 20000;
};

struct SteadyStateResult {
    Distribution rho;
    double residual = 0.0;  // ||p rho - rho||_1
    long iterations = 0;
    bool used_direct_solve = false;
    bool possibly_degenerate = false;  // epsilon == 0: uniqueness not guaranteed
};

/// Fixed point of the static kernel, by power iteration (tolerance 1e-14)
/// with a direct null-space solve as fallback. The result is symmetrized
/// under the branch swap, which pins its consumption at exactly 1/2, and is
/// accepted only if the residual is below 1e-12.
SteadyStateResult steady_state(const StochasticMatrix& p, double epsilon,
                               const SpectralOptions& opts = {});

/// Linearization S = p + V of the nonlinear master equation at the steady
/// state: V_{ss'} = 2 alpha r U_{s'} [ (p_down - p_up) rho_st ]_s. Refuses
/// steady states whose consumption deviates from 1/2 beyond 1e-8, since the
/// formula assumes that equality.
Matrix linearized_matrix(const KernelComponents& components, const ControlLaw& law,
                         const Distribution& rho_st);

/// Full spectrum of a real matrix with biorthonormal left/right vectors.
/// Families are left unclassified; see classify_families.
Spectrum eigendecompose(const Matrix& s);

/// Labels every mode: stationary when |Lambda - 1| < stationary_tol, ghost
/// when |sum_sigma U_sigma psi_sigma| < family_tol * ||psi||_1, significant
/// otherwise.
void classify_families(Spectrum& spectrum, const Vector& on_indicator,
                       const SpectralOptions& opts = {});

struct GapReport {
    double min_re_sf = 0.0;
    double min_re_wf = 0.0;
    double gap = 0.0;
    bool super_relaxation = false;
};

/// Relaxation-rate gap G = min Re lambda over the significant family minus
/// min Re lambda over the whole family, stationary mode excluded. G > tol
/// means super-relaxation. Throws when the significant family is empty.
GapReport gap(const Spectrum& spectrum, const SpectralOptions& opts = {});

enum class StabilityRegime { Stable, Alternating, Unstable };

std::string regime_name(StabilityRegime r);

struct StabilityReport {
    StabilityRegime regime = StabilityRegime::Stable;
    double max_modulus = 0.0;  // over non-stationary modes
};

/// Unstable when some non-stationary |Lambda| exceeds 1 + tol; alternating
/// when the dominant non-stationary eigenvalue is real negative within the
/// unit disk; stable otherwise.
StabilityReport stability(const Spectrum& spectrum, const SpectralOptions& opts = {});

struct AlphaTransitions {
    // The tracked branch is the significant mode that is born real when a
    // conjugate pair collides on the real axis, then descends through zero
    // and finally below -1.
    std::optional<double> alpha0;  // first real significant mode appears
    std::optional<double> alpha1;  // a significant eigenvalue crosses zero (det S flips sign)
    std::optional<double> alpha2;  // instability onset: some |Lambda| exceeds 1
};

/// Scans the dominant significant eigenvalue over the alpha grid and refines
/// each detected threshold by bisection to 1e-3. Thresholds not bracketed by
/// the grid are reported as absent.
AlphaTransitions alpha_transitions(const ModelParams& base, const std::vector<double>& alpha_grid,
                                   const SpectralOptions& opts = {});

/// One-stop pipeline: space, kernel, static matrix, steady state,
/// linearized matrix and classified spectrum for one parameter set.
struct Analysis {
    StateSpace space;
    KernelComponents components;
    StochasticMatrix p;
    SteadyStateResult steady;
    Matrix s;
    Spectrum spectrum;
};

Analysis analyze(const ModelParams& params, const SpectralOptions& opts = {});

}  // namespace tcl
