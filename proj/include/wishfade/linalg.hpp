// SPDX-License-Identifier: Apache-2.0
//
// wishfade: Wishart surrogates for generalized-fading MIMO channels
// Copyright (C) 2026 The wishfade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WISHFADE_LINALG_HPP
#define WISHFADE_LINALG_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace wishfade::linalg
{

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense complex matrix stored row-major.
class ComplexMatrix
{
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex> &entries() const { return data_; }

    ComplexMatrix adjoint() const;
    double max_abs() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexVector operator*(const ComplexMatrix &lhs, const ComplexVector &rhs);

// Square matrix equal to its conjugate transpose, with a real diagonal.
// Setters keep both triangles in sync, so the invariant cannot drift.
class HermitianMatrix
{
public:
    explicit HermitianMatrix(std::size_t dim);

    // Checks symmetry to tol * max(1, max |a_ij|) and symmetrizes the result.
    static HermitianMatrix from_matrix(const ComplexMatrix &m, double tol = 1e-12);
    static HermitianMatrix identity(std::size_t dim);

    std::size_t dim() const { return m_.rows(); }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    // Sets a_ij and a_ji = conj(a_ij). On the diagonal the imaginary part is dropped.
    void set(std::size_t i, std::size_t j, Complex value);
    void add_to_diagonal(double value);

    const ComplexMatrix &matrix() const { return m_; }
    double frobenius_norm() const;
    double trace() const;

private:
    ComplexMatrix m_;
};

// Square real matrix; used for the determinant forms of the closed-form
// expressions.
class RealMatrix
{
public:
    explicit RealMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t dim() const { return n_; }
    double &operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

// det = sign * exp(log_abs); sign is 0 for a singular matrix.
struct SignedLogDet
{
    double sign;
    double log_abs;

    double value() const;
};

// H * H^H.
HermitianMatrix gram(const ComplexMatrix &h);

// Determinant by LU with partial pivoting.
Complex det_complex(const ComplexMatrix &m);

// Determinant of a real matrix in log form. Each row is first divided by its
// largest magnitude, which keeps LU well scaled when the rows span many
// orders of magnitude.
SignedLogDet log_det(RealMatrix m);

// Eigenvalues in ascending order by cyclic complex Jacobi.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m);

struct EigenSystem
{
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // column k belongs to values[k]
};

EigenSystem hermitian_eigensystem(const HermitianMatrix &m);

// Eigenvalues of a positive semidefinite matrix. Values in [-1e-10 ||A||, 0)
// are clipped to 0; anything more negative is rejected.
std::vector<double> psd_eigenvalues(const HermitianMatrix &m);

// Solves m x = v by Cholesky. Throws NumericalError if m is not positive definite.
ComplexVector solve_hermitian(const HermitianMatrix &m, const ComplexVector &v);

// sum conj(a_i) b_i
Complex inner(const ComplexVector &a, const ComplexVector &b);
double norm(const ComplexVector &v);

} // namespace wishfade::linalg

#endif
