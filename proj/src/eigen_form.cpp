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

#include "wishfade/eigen_form.hpp"
#include "wishfade/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace wishfade
{

namespace
{

// Relative gap |w2 - w1| / w1 below which the direct two-eigenvalue form would
// lose more than about four digits to the (w2 - w1)^{n1-1} division.
double confluent_threshold(std::size_t n1)
{
    return std::pow(10.0, -4.0 / (static_cast<double>(n1) - 1.0));
}

} // namespace

void two_eigen_prefactor(std::size_t n1, std::size_t n2, double w1, double w2, double &log_abs, double &sign,
                         bool include_gap)
{
    if (n1 < 1 || n2 < n1)
        throw std::invalid_argument("eigenvalue density: requires 1 <= n1 <= n2");
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw std::invalid_argument("eigenvalue density: w1 and w2 must be positive");
    const double d1 = static_cast<double>(n1);
    const double d2 = static_cast<double>(n2);
    // |Sigma| = w1^{-(n1-1)} w2^{-1}.
    const double log_det_sigma = -(d1 - 1.0) * std::log(w1) - std::log(w2);
    double acc = -d2 * log_det_sigma;
    for (std::size_t j = 1; j <= n1; ++j)
        acc -= std::lgamma(d2 - static_cast<double>(j) + 1.0);
    for (std::size_t j = 1; j + 2 <= n1; ++j)
        acc -= std::lgamma(static_cast<double>(j) + 1.0);
    sign = (n1 * (n1 - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    if (n1 > 1 && include_gap)
    {
        const double gap = w2 - w1;
        if (gap == 0.0)
            throw std::domain_error("eigenvalue density: w1 = w2 needs the scaled-identity form");
        acc -= (d1 - 1.0) * std::log(std::abs(gap));
        if (gap < 0.0 && (n1 - 1) % 2 == 1)
            sign = -sign;
    }
    log_abs = acc;
}

EigenDeterminantForm::EigenDeterminantForm(const approx::WishartApprox &approx)
    : n1_(approx.dim()), n2_(approx.dof), identity_(approx.cov.is_scaled_identity()), confluent_(false), w1_(0.0),
      w2_(0.0), log_pref_(0.0), sign_pref_(1.0)
{
    const double d1 = static_cast<double>(n1_);
    const double d2 = static_cast<double>(n2_);
    if (identity_)
    {
        const double c = approx.cov.diag();
        w1_ = w2_ = 1.0 / c;
        double acc = -d1 * d2 * std::log(c);
        for (std::size_t i = 1; i <= n1_; ++i)
            acc -= std::lgamma(d2 - static_cast<double>(i) + 1.0) + std::lgamma(d1 - static_cast<double>(i) + 1.0);
        log_pref_ = acc;
        sign_pref_ = 1.0;
        return;
    }
    w1_ = approx.cov.w1();
    w2_ = approx.cov.w2();
    confluent_ = std::abs(w2_ - w1_) < confluent_threshold(n1_) * w1_;
    two_eigen_prefactor(n1_, n2_, w1_, w2_, log_pref_, sign_pref_, !confluent_);
    // The remainder column carries (-(w2 - w1))^{n1-1} times the divided difference.
    if (confluent_ && (n1_ - 1) % 2 == 1)
        sign_pref_ = -sign_pref_;
}

double EigenDeterminantForm::remainder_column(int power, const Integral &f) const
{
    // f(p, w2) = sum_k (-delta)^k / k! f(p + k, w1). The first n1 - 1 terms are
    // combinations of the w1 columns and drop out of the determinant; the rest,
    // divided by (-delta)^{n1-1}, form this column.
    const double delta = w2_ - w1_;
    const int shift = static_cast<int>(n1_) - 1;
    double coef = std::exp(-std::lgamma(static_cast<double>(shift) + 1.0));
    double sum = 0.0;
    int small_run = 0;
    constexpr int max_terms = 2000;
    for (int k = 0; k < max_terms; ++k)
    {
        const double term = coef * f(power + shift + k, w1_);
        if (!std::isfinite(term))
            throw NumericalError("determinant form: remainder series overflows");
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum))
        {
            if (++small_run == 3)
                return sum;
        }
        else
            small_run = 0;
        coef *= -delta / static_cast<double>(k + shift + 1);
        if (coef == 0.0)
            return sum;
    }
    throw NonConvergenceError("determinant form: remainder series did not converge");
}

double EigenDeterminantForm::value(std::size_t i, std::size_t j, const Integral &f) const
{
    const int base = static_cast<int>(n2_) - static_cast<int>(n1_);
    const int ii = static_cast<int>(i);
    const int jj = static_cast<int>(j);
    if (identity_)
        return f(base + ii + jj, w1_);
    if (j + 1 < n1_)
        return (jj % 2 == 0 ? 1.0 : -1.0) * f(base + ii + jj, w1_);
    return confluent_ ? remainder_column(base + ii, f) : f(base + ii, w2_);
}

double EigenDeterminantForm::evaluate(const linalg::RealMatrix &m) const
{
    const linalg::SignedLogDet d = linalg::log_det(m);
    if (d.sign == 0.0)
        return 0.0;
    const double log_value = log_pref_ + d.log_abs;
    if (log_value > 700.0)
        throw NumericalError("determinant form: result overflows");
    return sign_pref_ * d.sign * std::exp(log_value);
}

double EigenDeterminantForm::full(const Integral &f) const
{
    linalg::RealMatrix m(n1_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n1_; ++j)
            m(i, j) = value(i, j, f);
    return evaluate(m);
}

double EigenDeterminantForm::column_sum(const Integral &base, const Integral &special) const
{
    linalg::RealMatrix plain(n1_);
    linalg::RealMatrix swapped(n1_);
    for (std::size_t i = 0; i < n1_; ++i)
        for (std::size_t j = 0; j < n1_; ++j)
        {
            plain(i, j) = value(i, j, base);
            swapped(i, j) = value(i, j, special);
        }
    double total = 0.0;
    for (std::size_t k = 0; k < n1_; ++k)
    {
        linalg::RealMatrix m = plain;
        for (std::size_t i = 0; i < n1_; ++i)
            m(i, k) = swapped(i, k);
        total += evaluate(m);
    }
    return total;
}

} // namespace wishfade
