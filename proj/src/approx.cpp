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

#include "wishfade/approx.hpp"
#include "wishfade/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

namespace wishfade::approx
{

namespace
{

constexpr std::uint64_t kTagDofFit = 0x11;
constexpr std::uint64_t kTagNmseTrue = 0x21;
constexpr std::uint64_t kTagNmseSurrogate = 0x22;

void check_dims(std::size_t n1, std::size_t n2)
{
    if (n1 < 1)
        throw std::invalid_argument("surrogate: n1 must be at least 1");
    if (n2 < n1)
        throw std::invalid_argument("surrogate: n2 must be at least n1");
}

// X X^H for Hermitian X is X^2.
linalg::HermitianMatrix hermitian_square(const linalg::HermitianMatrix &x)
{
    const auto &m = x.matrix();
    return linalg::gram(m);
}

} // namespace

CovarianceModel::CovarianceModel(std::size_t dim, double diag, double offdiag) : dim_(dim), a_(diag), y_(offdiag)
{
    if (dim < 1)
        throw std::invalid_argument("CovarianceModel: dim must be at least 1");
    if (!(diag > 0.0) || !std::isfinite(diag))
        throw std::invalid_argument("CovarianceModel: diagonal must be positive");
    if (!std::isfinite(offdiag))
        throw std::invalid_argument("CovarianceModel: off-diagonal must be finite");
    if (dim == 1)
        y_ = 0.0;
    if (dim > 1 && !(eig_repeated() > 0.0 && eig_single() > 0.0))
        throw std::invalid_argument("CovarianceModel: matrix is not positive definite");
}

double CovarianceModel::log_det() const
{
    return (static_cast<double>(dim_) - 1.0) * std::log(eig_repeated()) + std::log(eig_single());
}

bool CovarianceModel::is_scaled_identity(double tol) const
{
    return dim_ == 1 || std::abs(y_) / a_ < tol;
}

linalg::HermitianMatrix CovarianceModel::materialize() const
{
    linalg::HermitianMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m.set(i, j, i == j ? a_ : y_);
    return m;
}

linalg::HermitianMatrix CovarianceModel::sqrt() const
{
    // Sigma = e_r (I - J/n) + e_s J/n with J the all-ones matrix.
    const double n = static_cast<double>(dim_);
    const double sr = std::sqrt(eig_repeated());
    const double ss = std::sqrt(eig_single());
    const double off = (ss - sr) / n;
    linalg::HermitianMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            m.set(i, j, i == j ? sr + off : off);
    return m;
}

WishartApprox::WishartApprox(std::size_t dof_, CovarianceModel cov_) : dof(dof_), cov(cov_)
{
    if (dof < cov.dim())
        throw std::invalid_argument("WishartApprox: degrees of freedom must be at least the dimension");
}

linalg::HermitianMatrix WishartApprox::mean() const
{
    const double n = static_cast<double>(dof);
    return CovarianceModel(cov.dim(), n * cov.diag(), n * cov.offdiag()).materialize();
}

std::optional<WishartApprox> FullCovarianceWishart::as_exchangeable(double tol) const
{
    const std::size_t n = cov.dim();
    const double a = cov(0, 0).real();
    const linalg::Complex y = n > 1 ? cov(0, 1) : linalg::Complex{0.0, 0.0};
    const double bound = tol * std::abs(a);
    if (std::abs(y.imag()) > bound)
        return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            const linalg::Complex want = i == j ? linalg::Complex{a, 0.0} : y;
            if (std::abs(cov(i, j) - want) > bound)
                return std::nullopt;
        }
    return WishartApprox(dof, CovarianceModel(n, a, y.real()));
}

double mean_component_kmu(double losc, double sigma2, double mu, const specfun::SeriesControl &ctl)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("mean_component_kmu: sigma2 must be positive");
    if (!(mu > 0.0))
        throw std::invalid_argument("mean_component_kmu: mu must be positive");
    if (losc == 0.0)
        return 0.0;
    // The component density is odd under p -> -p, x -> -x.
    if (losc < 0.0)
        return -mean_component_kmu(-losc, sigma2, mu, ctl);

    const double p2 = losc * losc;
    const double two_pi_p2 = 2.0 * std::numbers::pi * p2;
    const double denom = 4.0 * sigma2 + two_pi_p2;
    const double x = two_pi_p2 / denom;
    const double y = 2.0 * p2 / denom;
    const double log_pref = std::log(2.0 * losc) - p2 / (2.0 * sigma2) +
                            (0.5 * mu + 1.0) * std::log(4.0 * sigma2 / denom) + std::log(0.5 * mu);
    const double psi1 = specfun::appell_psi1(0.5 * mu + 1.0, 1.0, 1.5, 0.5 * mu, x, y, ctl);
    return std::exp(log_pref) * psi1;
}

WishartApprox build_wishart_kmu(const fading::KappaMuParams &params, std::size_t n1, std::size_t n2)
{
    params.validate();
    check_dims(n1, n2);
    const double a = 2.0 * params.sigma2 * (1.0 + params.kappa) * params.mu;
    const double ex = mean_component_kmu(params.p, params.sigma2, params.mu);
    const double ey = mean_component_kmu(params.q, params.sigma2, params.mu);
    return WishartApprox(n2, CovarianceModel(n1, a, ex * ex + ey * ey));
}

WishartApprox build_wishart_eta_mu(const fading::EtaMuParams &params, std::size_t n1, std::size_t n2)
{
    params.validate();
    check_dims(n1, n2);
    // Omega_X + Omega_Y is exactly Omega; using Omega itself keeps the result
    // bit-identical for every eta.
    return WishartApprox(n2, CovarianceModel(n1, params.omega, 0.0));
}

FullCovarianceWishart build_wishart_rician(const linalg::ComplexMatrix &mean, double sigma2, std::size_t n2)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("build_wishart_rician: sigma2 must be positive");
    if (mean.cols() != n2)
        throw std::invalid_argument("build_wishart_rician: mean matrix must have n2 columns");
    check_dims(mean.rows(), n2);
    linalg::HermitianMatrix cov = linalg::gram(mean);
    const double inv_n2 = 1.0 / static_cast<double>(n2);
    linalg::HermitianMatrix out(mean.rows());
    for (std::size_t i = 0; i < mean.rows(); ++i)
        for (std::size_t j = i; j < mean.rows(); ++j)
            out.set(i, j, cov(i, j) * inv_n2 + (i == j ? 2.0 * sigma2 : 0.0));
    return {n2, out};
}

WishartApprox build_wishart(const fading::FadingModel &model, std::size_t n1, std::size_t n2)
{
    fading::validate(model);
    check_dims(n1, n2);
    struct Visitor
    {
        std::size_t n1;
        std::size_t n2;
        WishartApprox operator()(const fading::KappaMuParams &p) const { return build_wishart_kmu(p, n1, n2); }
        WishartApprox operator()(const fading::EtaMuParams &p) const { return build_wishart_eta_mu(p, n1, n2); }
        WishartApprox operator()(const fading::RicianParams &p) const
        {
            const double m2 = std::norm(p.mean);
            return WishartApprox(n2, CovarianceModel(n1, m2 + 2.0 * p.sigma2, m2));
        }
        WishartApprox operator()(const fading::NakagamiParams &p) const
        {
            return WishartApprox(n2, CovarianceModel(n1, p.omega, 0.0));
        }
        WishartApprox operator()(const fading::RayleighParams &p) const
        {
            return WishartApprox(n2, CovarianceModel(n1, 2.0 * p.sigma2, 0.0));
        }
    };
    return std::visit(Visitor{n1, n2}, model);
}

namespace
{

linalg::HermitianMatrix sample_wishart_with_root(const linalg::ComplexMatrix &root, std::size_t dof,
                                                 RandomStream &rng)
{
    const std::size_t n = root.rows();
    linalg::ComplexMatrix g(n, dof);
    const double s = std::sqrt(0.5);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < dof; ++j)
        {
            const double re = s * rng.normal();
            const double im = s * rng.normal();
            g(i, j) = {re, im};
        }
    return linalg::gram(root * g);
}

} // namespace

linalg::HermitianMatrix sample_wishart(const WishartApprox &approx, RandomStream &rng)
{
    return sample_wishart_with_root(approx.cov.sqrt().matrix(), approx.dof, rng);
}

linalg::HermitianMatrix sample_wishart(const FullCovarianceWishart &approx, RandomStream &rng)
{
    const auto eig = linalg::hermitian_eigensystem(approx.cov);
    const std::size_t n = approx.cov.dim();
    linalg::ComplexMatrix root(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
        {
            linalg::Complex sum = 0.0;
            for (std::size_t k = 0; k < n; ++k)
            {
                if (eig.values[k] < 0.0)
                    throw std::invalid_argument("sample_wishart: covariance is not positive semidefinite");
                sum += eig.vectors(i, k) * std::sqrt(eig.values[k]) * std::conj(eig.vectors(j, k));
            }
            root(i, j) = sum;
        }
    return sample_wishart_with_root(root, approx.dof, rng);
}

double fit_dof_kl(const fading::FadingModel &model, std::size_t n1, std::size_t n2, const McConfig &cfg)
{
    fading::validate(model);
    check_dims(n1, n2);
    if (cfg.trials < 1000)
        throw std::invalid_argument("fit_dof_kl: at least 1000 trials are required");

    // Outputs: Re/Im of every entry of X, then ln det X.
    const std::size_t cells = n1 * n1;
    auto acc = run_trials(cfg, kTagDofFit, 2 * cells + 1, [&](RandomStream &rng, double *out) {
        const auto h = fading::sample_channel_matrix(model, n1, n2, rng);
        const auto x = linalg::gram(h);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n1; ++j)
            {
                out[2 * (i * n1 + j)] = x(i, j).real();
                out[2 * (i * n1 + j) + 1] = x(i, j).imag();
            }
        const double det = linalg::det_complex(x.matrix()).real();
        if (!(det > 0.0))
            throw EstimationError("fit_dof_kl: singular Gram draw");
        out[2 * cells] = std::log(det);
    });

    linalg::ComplexMatrix z(n1, n1);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            z(i, j) = {acc[2 * (i * n1 + j)].mean(), acc[2 * (i * n1 + j) + 1].mean()};
    const double det_z = linalg::det_complex(z).real();
    if (!(det_z > 0.0))
        throw EstimationError("fit_dof_kl: empirical mean is not positive definite");
    const double log_det_z = std::log(det_z);
    const double mean_log_det = acc[2 * cells].mean();

    const double d1 = static_cast<double>(n1);
    const auto stationarity = [&](double n) {
        double psi_sum = 0.0;
        for (std::size_t i = 1; i <= n1; ++i)
            psi_sum += specfun::digamma(n - static_cast<double>(i) + 1.0);
        return d1 * std::log(n) - log_det_z + mean_log_det - psi_sum;
    };

    // psi(n - n1 + 1) diverges to -inf as n -> n1 - 1, so the left end is
    // nudged inside the domain.
    const double lo = d1 - 1.0 + 1e-9;
    const double hi = 10.0 * static_cast<double>(n2);
    const double f_lo = stationarity(lo);
    const double f_hi = stationarity(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0) && !(f_lo < 0.0 && f_hi > 0.0))
        throw EstimationError("fit_dof_kl: no sign change on (" + std::to_string(lo) + ", " + std::to_string(hi) +
                              "]");
    std::uintmax_t max_iter = 200;
    const auto root = boost::math::tools::toms748_solve(stationarity, lo, hi, f_lo, f_hi,
                                                         boost::math::tools::eps_tolerance<double>(45), max_iter);
    return 0.5 * (root.first + root.second);
}

double nmse_second_moment(const fading::FadingModel &model, std::size_t n1, std::size_t n2, const McConfig &cfg)
{
    fading::validate(model);
    check_dims(n1, n2);
    if (cfg.trials < 10000)
        throw std::invalid_argument("nmse_second_moment: at least 10^4 trials are required");

    const std::size_t cells = n1 * n1;
    const auto record = [n1](const linalg::HermitianMatrix &x, double *out) {
        const auto sq = hermitian_square(x);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n1; ++j)
            {
                out[2 * (i * n1 + j)] = sq(i, j).real();
                out[2 * (i * n1 + j) + 1] = sq(i, j).imag();
            }
    };

    const auto truth = run_trials(cfg, kTagNmseTrue, 2 * cells, [&](RandomStream &rng, double *out) {
        record(linalg::gram(fading::sample_channel_matrix(model, n1, n2, rng)), out);
    });
    const WishartApprox surrogate = build_wishart(model, n1, n2);
    const auto fitted = run_trials(cfg, kTagNmseSurrogate, 2 * cells, [&](RandomStream &rng, double *out) {
        record(sample_wishart(surrogate, rng), out);
    });

    double numer = 0.0;
    double denom = 0.0;
    for (std::size_t c = 0; c < cells; ++c)
    {
        const linalg::Complex t{truth[2 * c].mean(), truth[2 * c + 1].mean()};
        const linalg::Complex s{fitted[2 * c].mean(), fitted[2 * c + 1].mean()};
        numer += std::abs(t - s);
        denom += t.real();
    }
    return numer / denom;
}

} // namespace wishfade::approx
