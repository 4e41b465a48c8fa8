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

#ifndef WISHFADE_APPROX_HPP
#define WISHFADE_APPROX_HPP

#include "wishfade/fading.hpp"
#include "wishfade/linalg.hpp"
#include "wishfade/montecarlo.hpp"
#include "wishfade/specfun.hpp"

#include <cstddef>
#include <optional>

namespace wishfade::approx
{

/// Exchangeable n x n covariance: every diagonal entry equals a and every
/// off-diagonal entry equals y. Its eigenvalues are a - y (multiplicity n-1)
/// and a + (n-1) y (multiplicity 1).
class CovarianceModel
{
public:
    CovarianceModel(std::size_t dim, double diag, double offdiag);

    std::size_t dim() const { return dim_; }
    double diag() const { return a_; }
    double offdiag() const { return y_; }

    double eig_repeated() const { return a_ - y_; }
    double eig_single() const { return a_ + (static_cast<double>(dim_) - 1.0) * y_; }

    // Eigenvalues of the inverse: w1 pairs with eig_repeated, w2 with eig_single.
    double w1() const { return 1.0 / eig_repeated(); }
    double w2() const { return 1.0 / eig_single(); }

    double log_det() const;

    // True when the two-eigenvalue structure collapses to a multiple of I
    // (dim 1, or |y| / a below tol).
    bool is_scaled_identity(double tol = 1e-9) const;

    linalg::HermitianMatrix materialize() const;
    // Principal square root, from the spectral decomposition.
    linalg::HermitianMatrix sqrt() const;

    bool operator==(const CovarianceModel &other) const = default;

private:
    std::size_t dim_;
    double a_;
    double y_;
};

// Central complex Wishart surrogate CW_{n1}(dof, cov) for H H^H.
struct WishartApprox
{
    std::size_t dof;
    CovarianceModel cov;

    WishartApprox(std::size_t dof_, CovarianceModel cov_);

    std::size_t dim() const { return cov.dim(); }
    linalg::HermitianMatrix mean() const;

    bool operator==(const WishartApprox &other) const = default;
};

// Same surrogate with an arbitrary covariance (Rician with distinct means).
struct FullCovarianceWishart
{
    std::size_t dof;
    linalg::HermitianMatrix cov;

    // The exchangeable form, if the covariance has one (to tol relative to the diagonal).
    std::optional<WishartApprox> as_exchangeable(double tol = 1e-12) const;
};

/// Closed-form approximation of the mean of one kappa-mu component with
/// line-of-sight amplitude `losc`:
///   E[x] ~ 2 p e^{-p^2/(2 s2)} (4 s2 / (4 s2 + 2 pi p^2))^{mu/2+1} (mu/2)
///          Psi1(mu/2 + 1, 1; 3/2, mu/2; 2 pi p^2 / (2 pi p^2 + 4 s2), 2 p^2 / (4 s2 + 2 pi p^2)).
/// It follows from replacing tanh(t) by erf(sqrt(pi) t / 2) in the exact integral.
double mean_component_kmu(double losc, double sigma2, double mu, const specfun::SeriesControl &ctl = {});

WishartApprox build_wishart_kmu(const fading::KappaMuParams &params, std::size_t n1, std::size_t n2);
WishartApprox build_wishart_eta_mu(const fading::EtaMuParams &params, std::size_t n1, std::size_t n2);

// Sigma = 2 sigma2 I + M M^H / n2 for an n1 x n2 mean matrix M.
FullCovarianceWishart build_wishart_rician(const linalg::ComplexMatrix &mean, double sigma2, std::size_t n2);

// Surrogate for any model with i.i.d. entries.
WishartApprox build_wishart(const fading::FadingModel &model, std::size_t n1, std::size_t n2);

// One draw of Sigma^{1/2} G G^H Sigma^{1/2} with G an n1 x dof matrix of CN(0, 1).
linalg::HermitianMatrix sample_wishart(const WishartApprox &approx, RandomStream &rng);
linalg::HermitianMatrix sample_wishart(const FullCovarianceWishart &approx, RandomStream &rng);

/// Degree-of-freedom fit minimising the K-L divergence to the surrogate.
/// Estimates Z = E[X] and Y = E[ln det X] by simulation and solves
///   n1 ln(n) - ln det Z + Y - sum_{i=1}^{n1} psi(n - i + 1) = 0
/// for n in (n1 - 1, 10 n2]. Throws EstimationError without a sign change.
double fit_dof_kl(const fading::FadingModel &model, std::size_t n1, std::size_t n2, const McConfig &cfg);

/// Second-moment discrepancy between the true Gram ensemble and its
/// surrogate: sum_ij |E[X X^H]_ij - E[X' X'^H]_ij| / sum_ij Re E[X X^H]_ij,
/// each expectation estimated from cfg.trials independent draws.
double nmse_second_moment(const fading::FadingModel &model, std::size_t n1, std::size_t n2, const McConfig &cfg);

} // namespace wishfade::approx

#endif
