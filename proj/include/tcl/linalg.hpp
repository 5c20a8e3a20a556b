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

#include "tcl/matrix.hpp"

namespace tcl {

/// Solves a x = b by LU decomposition with partial pivoting.
/// Throws std::runtime_error on (numerically) singular input.
Vector solve_dense(Matrix a, Vector b);

/// Dense complex matrix in row-major order, used only by the spectral code.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols, Complex value = Complex(0.0, 0.0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, value) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Complex operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

private:
    int rows_ = 0;
    int cols_ = 0;
    CVector a_;
};

/// Inverse of a square complex matrix by LU with partial pivoting.
/// Throws std::runtime_error when the matrix is singular to working precision.
CMatrix invert(CMatrix a);

}  // namespace tcl
