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

#include <stdexcept>

#include "tcl/matrix.hpp"

namespace tcl {

struct EigenSystem {
    CVector values;
    std::vector<CVector> right_vectors;  // right_vectors[k] belongs to values[k]
};

/// Raised when the implicitly shifted QR iteration exhausts its budget.
struct QrConvergenceError : std::runtime_error {
    explicit QrConvergenceError(const std::string& what, int submatrix)
        : std::runtime_error(what), submatrix_size(submatrix) {}
    int submatrix_size;
};

/// Full eigensystem of a dense real matrix.
///
/// Pipeline: Parlett-Reinsch balancing, Householder reduction to upper
/// Hessenberg form, Francis double-shift QR iteration to real Schur form
/// (deflation threshold 1e-14 times the matrix norm, exceptional shifts
/// after 10 and 20 stalled sweeps), then eigenvector extraction by
/// back-substitution on the quasi-triangular factor. Complex conjugate
/// eigenvalues come out adjacent with the positive-imaginary member first.
/// Eigenvectors are normalized so the largest-modulus component equals 1.
EigenSystem eig_general(const Matrix& a);

}  // namespace tcl
