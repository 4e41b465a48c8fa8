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

#ifndef WISHFADE_EIGEN_FORM_HPP
#define WISHFADE_EIGEN_FORM_HPP

#include "wishfade/approx.hpp"
#include "wishfade/linalg.hpp"

#include <cstddef>
#include <functional>

namespace wishfade
{

/// Expectations of the form E[f(lambda_1) ... f(lambda_n1)] over the unordered
/// eigenvalues of a CW_{n1}(n2, Sigma) matrix with exchangeable Sigma reduce
/// to prefactor * det(M), where M_ij is a one-dimensional integral
///   sign_ij * int_0^inf lambda^{m_ij} exp(-w_j lambda) f(lambda) d lambda.
///
/// Two-eigenvalue branch (w1 = 1/(a-y) of multiplicity n1-1, w2 = 1/(a+(n1-1)y)):
///   column j < n1: m = n2-n1+i+j-2, w = w1, sign (-1)^{j-1}
///   column n1:     m = n2-n1+i-1,   w = w2
///   prefactor = (-1)^{n1(n1-1)/2} / (prod_{j=1}^{n1} (n2-j)! |Sigma|^{n2}
///               (w2-w1)^{n1-1} prod_{j=1}^{n1-2} j!)
/// Scaled-identity branch (Sigma = c I): m = n2-n1+i+j-2, w = 1/c and
///   prefactor = c^{-n1 n2} / prod_{i=1}^{n1} (n2-i)! (n1-i)!.
/// Indices i, j above are 1-based. The branch is chosen from the covariance.
class EigenDeterminantForm
{
public:
    // integral(m, w) = int_0^inf lambda^m exp(-w lambda) f(lambda) d lambda
    using Integral = std::function<double(int, double)>;

    explicit EigenDeterminantForm(const approx::WishartApprox &approx);

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    bool identity_branch() const { return identity_; }
    // True when w1 and w2 are close enough that the w2 column is evaluated as a
    // Taylor remainder around w1 (the divided-difference factor cancels exactly).
    bool confluent_branch() const { return confluent_; }
    double log_abs_prefactor() const { return log_pref_; }
    double prefactor_sign() const { return sign_pref_; }

    // prefactor * det(M) with every column built from `f`.
    double full(const Integral &f) const;

    // sum_k prefactor * det(M^k), where column k of M^k uses `special` and the
    // other columns use `base`. This is E[sum_i g(lambda_i)] when `base` is the
    // plain gamma moment and `special` carries g.
    double column_sum(const Integral &base, const Integral &special) const;

private:
    // Entry (i, j) of the determinant, 0-based.
    double value(std::size_t i, std::size_t j, const Integral &f) const;
    double remainder_column(int power, const Integral &f) const;
    double evaluate(const linalg::RealMatrix &m) const;

    std::size_t n1_;
    std::size_t n2_;
    bool identity_;
    bool confluent_;
    double w1_;
    double w2_;
    double log_pref_;
    double sign_pref_;
};

// Log-magnitude and sign of the two-eigenvalue density prefactor. With
// include_gap = false the (w2 - w1)^{n1-1} divisor is left out.
void two_eigen_prefactor(std::size_t n1, std::size_t n2, double w1, double w2, double &log_abs, double &sign,
                         bool include_gap = true);

} // namespace wishfade

#endif
