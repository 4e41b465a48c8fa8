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

#include "wishfade/linalg.hpp"
#include "wishfade/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace wishfade::linalg
{

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols)
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be at least 1");
    if (data_.size() != rows * cols)
        throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = std::conj((*this)(i, j));
    return out;
}

double ComplexMatrix::max_abs() const
{
    double best = 0.0;
    for (const auto &z : data_)
        best = std::max(best, std::abs(z));
    return best;
}

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs)
{
    if (lhs.cols() != rhs.rows())
        throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k)
        {
            const Complex a = lhs(i, k);
            for (std::size_t j = 0; j < rhs.cols(); ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

ComplexVector operator*(const ComplexMatrix &lhs, const ComplexVector &rhs)
{
    if (lhs.cols() != rhs.size())
        throw std::invalid_argument("matrix-vector product: dimensions differ");
    ComplexVector out(lhs.rows());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            out[i] += lhs(i, j) * rhs[j];
    return out;
}

HermitianMatrix::HermitianMatrix(std::size_t dim) : m_(dim, dim) {}

HermitianMatrix HermitianMatrix::identity(std::size_t dim)
{
    HermitianMatrix h(dim);
    h.add_to_diagonal(1.0);
    return h;
}

HermitianMatrix HermitianMatrix::from_matrix(const ComplexMatrix &m, double tol)
{
    if (!m.is_square())
        throw std::invalid_argument("HermitianMatrix: matrix is not square");
    const double bound = tol * std::max(1.0, m.max_abs());
    HermitianMatrix h(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        if (std::abs(m(i, i).imag()) > bound)
            throw std::invalid_argument("HermitianMatrix: diagonal is not real");
        h.set(i, i, m(i, i));
        for (std::size_t j = i + 1; j < m.rows(); ++j)
        {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > bound)
                throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian");
            h.set(i, j, 0.5 * (m(i, j) + std::conj(m(j, i))));
        }
    }
    return h;
}

void HermitianMatrix::set(std::size_t i, std::size_t j, Complex value)
{
    if (i == j)
    {
        m_(i, i) = value.real();
        return;
    }
    m_(i, j) = value;
    m_(j, i) = std::conj(value);
}

void HermitianMatrix::add_to_diagonal(double value)
{
    for (std::size_t i = 0; i < dim(); ++i)
        m_(i, i) += value;
}

double HermitianMatrix::frobenius_norm() const
{
    double sum = 0.0;
    for (const auto &z : m_.entries())
        sum += std::norm(z);
    return std::sqrt(sum);
}

double HermitianMatrix::trace() const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < dim(); ++i)
        sum += m_(i, i).real();
    return sum;
}

double SignedLogDet::value() const
{
    if (sign == 0.0)
        return 0.0;
    return sign * std::exp(log_abs);
}

HermitianMatrix gram(const ComplexMatrix &h)
{
    HermitianMatrix out(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = i; j < h.rows(); ++j)
        {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < h.cols(); ++k)
                sum += h(i, k) * std::conj(h(j, k));
            out.set(i, j, sum);
        }
    return out;
}

Complex det_complex(const ComplexMatrix &m)
{
    if (!m.is_square())
        throw std::invalid_argument("det_complex: matrix is not square");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    Complex det = 1.0;
    for (std::size_t k = 0; k < n; ++k)
    {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(pivot, k)))
                pivot = i;
        if (a(pivot, k) == 0.0)
            return 0.0;
        if (pivot != k)
        {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(pivot, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i)
        {
            const Complex f = a(i, k) / a(k, k);
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

SignedLogDet log_det(RealMatrix m)
{
    const std::size_t n = m.dim();
    if (n == 0)
        return {1.0, 0.0};
    double sign = 1.0;
    double log_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            if (!std::isfinite(m(i, j)))
                throw NumericalError("log_det: non-finite matrix entry");
            scale = std::max(scale, std::abs(m(i, j)));
        }
        if (scale == 0.0)
            return {0.0, -std::numeric_limits<double>::infinity()};
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) /= scale;
        log_abs += std::log(scale);
    }
    for (std::size_t k = 0; k < n; ++k)
    {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(pivot, k)))
                pivot = i;
        if (m(pivot, k) == 0.0)
            return {0.0, -std::numeric_limits<double>::infinity()};
        if (pivot != k)
        {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(pivot, j));
            sign = -sign;
        }
        const double p = m(k, k);
        if (p < 0.0)
            sign = -sign;
        log_abs += std::log(std::abs(p));
        for (std::size_t i = k + 1; i < n; ++i)
        {
            const double f = m(i, k) / p;
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) -= f * m(k, j);
        }
    }
    return {sign, log_abs};
}

namespace
{

double off_diagonal_norm(const ComplexMatrix &a)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

// Cyclic Jacobi. Each rotation U acts on columns p and q with
//   U e_p = c e_p - s e^{-i phi} e_q,   U e_q = s e_p + c e^{-i phi} e_q,
// where a_pq = r e^{i phi}; the phase makes the pivot real and the real
// rotation annihilates it.
EigenSystem jacobi(const HermitianMatrix &m, bool want_vectors)
{
    constexpr int kMaxSweeps = 100;
    const std::size_t n = m.dim();
    ComplexMatrix a = m.matrix();
    ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix(1, 1);
    const double scale = m.frobenius_norm();

    bool converged = scale == 0.0 || n == 1;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep)
    {
        if (off_diagonal_norm(a) <= 1e-12 * scale)
        {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
            {
                const Complex h = a(p, q);
                const double r = std::abs(h);
                if (r < std::numeric_limits<double>::min())
                    continue;
                const Complex phase = h / r; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * r);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex ph_conj = std::conj(phase);

                for (std::size_t k = 0; k < n; ++k)
                {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * ph_conj * akq;
                    a(k, q) = s * akp + c * ph_conj * akq;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;

                if (want_vectors)
                    for (std::size_t k = 0; k < n; ++k)
                    {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = c * vkp - s * ph_conj * vkq;
                        v(k, q) = s * vkp + c * ph_conj * vkq;
                    }
            }
    }
    if (!converged && off_diagonal_norm(a) > 1e-12 * scale)
        throw NonConvergenceError("hermitian eigenvalues: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out{std::vector<double>(n), want_vectors ? ComplexMatrix(n, n) : ComplexMatrix(1, 1)};
    for (std::size_t k = 0; k < n; ++k)
    {
        out.values[k] = a(order[k], order[k]).real();
        if (want_vectors)
            for (std::size_t i = 0; i < n; ++i)
                out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

} // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix &m)
{
    return jacobi(m, false).values;
}

EigenSystem hermitian_eigensystem(const HermitianMatrix &m)
{
    return jacobi(m, true);
}

std::vector<double> psd_eigenvalues(const HermitianMatrix &m)
{
    std::vector<double> values = hermitian_eigenvalues(m);
    const double floor = -1e-10 * m.frobenius_norm();
    for (double &v : values)
    {
        if (v < floor)
            throw std::domain_error("psd_eigenvalues: matrix has a negative eigenvalue");
        v = std::max(v, 0.0);
    }
    return values;
}

ComplexVector solve_hermitian(const HermitianMatrix &m, const ComplexVector &v)
{
    const std::size_t n = m.dim();
    if (v.size() != n)
        throw std::invalid_argument("solve_hermitian: dimension mismatch");

    // m = L L^H with L lower triangular.
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j)
    {
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(l(j, k));
        if (!(d > 0.0))
            throw NumericalError("solve_hermitian: matrix is not positive definite");
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i)
        {
            Complex sum = m(i, j);
            for (std::size_t k = 0; k < j; ++k)
                sum -= l(i, k) * std::conj(l(j, k));
            l(i, j) = sum / ljj;
        }
    }
    ComplexVector y(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        Complex sum = v[i];
        for (std::size_t k = 0; k < i; ++k)
            sum -= l(i, k) * y[k];
        y[i] = sum / l(i, i);
    }
    ComplexVector x(n);
    for (std::size_t ii = n; ii-- > 0;)
    {
        Complex sum = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            sum -= std::conj(l(k, ii)) * x[k];
        x[ii] = sum / l(ii, ii);
    }
    return x;
}

Complex inner(const ComplexVector &a, const ComplexVector &b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("inner: dimension mismatch");
    Complex sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += std::conj(a[i]) * b[i];
    return sum;
}

double norm(const ComplexVector &v)
{
    double sum = 0.0;
    for (const auto &z : v)
        sum += std::norm(z);
    return std::sqrt(sum);
}

} // namespace wishfade::linalg
