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

#include "wishfade/oc.hpp"
#include "wishfade/eigen_form.hpp"
#include "wishfade/errors.hpp"
#include "wishfade/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>

namespace wishfade::oc
{

namespace
{

constexpr std::uint64_t kTagSerTrue = 0x41;
constexpr std::uint64_t kTagSerSurrogate = 0x42;

void check_noise(double sigma2)
{
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw std::invalid_argument("optimum combining: noise power must be positive and finite");
}

double pe(const QamConstants &qam, double sinr, PeRule rule)
{
    return rule == PeRule::exact ? pe_exact(qam, sinr) : pe_exponential(qam, sinr);
}

std::vector<McEstimate> estimates(const std::vector<StatAccumulator> &acc)
{
    std::vector<McEstimate> out;
    out.reserve(acc.size());
    for (const auto &a : acc)
        out.push_back(a.estimate());
    return out;
}

} // namespace

QamConstants qam_constants(int m)
{
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    if (m < 4 || root * root != m)
        throw std::invalid_argument("QAM order must be a perfect square >= 4");
    QamConstants c{};
    c.m = m;
    c.k1 = 4.0 * (1.0 - 1.0 / static_cast<double>(root));
    c.k2 = 3.0 / (static_cast<double>(m) - 1.0);
    c.k3 = c.k1 * c.k1 / 4.0;
    c.a = {c.k1 / 12.0, c.k1 / 4.0, -c.k3 / 144.0, -c.k3 / 16.0, -c.k3 / 24.0};
    c.b = {c.k2 / 2.0, 2.0 * c.k2 / 3.0, c.k2, 4.0 * c.k2 / 3.0, 7.0 * c.k2 / 6.0};
    return c;
}

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double pe_exact(const QamConstants &qam, double sinr)
{
    if (!(sinr >= 0.0))
        throw std::invalid_argument("pe_exact: SINR must be nonnegative");
    const double q = q_function(std::sqrt(qam.k2 * sinr));
    return qam.k1 * q - qam.k3 * q * q;
}

double pe_exponential(const QamConstants &qam, double sinr)
{
    if (!(sinr >= 0.0))
        throw std::invalid_argument("pe_exponential: SINR must be nonnegative");
    double sum = 0.0;
    for (std::size_t l = 0; l < qam.a.size(); ++l)
        sum += qam.a[l] * std::exp(-qam.b[l] * sinr);
    return sum;
}

void OcScenario::validate() const
{
    if (n_r < 1)
        throw std::invalid_argument("optimum combining: N_R must be at least 1");
    if (!(e_i > 0.0) || !std::isfinite(e_i))
        throw std::invalid_argument("optimum combining: interferer power must be positive and finite");
    check_noise(sigma2_noise);
    qam_constants(qam_order);
    fading::validate(interferer_model);
}

double sinr_oc(const linalg::ComplexVector &c, const linalg::HermitianMatrix &r, double e_i, double sigma2_noise)
{
    if (!(e_i > 0.0))
        throw std::invalid_argument("sinr_oc: interferer power must be positive");
    check_noise(sigma2_noise);
    linalg::HermitianMatrix loaded = r;
    loaded.add_to_diagonal(sigma2_noise / e_i);
    const auto x = linalg::solve_hermitian(loaded, c);
    const linalg::Complex q = linalg::inner(c, x);
    if (std::abs(q.imag()) > 1e-10 * std::max(1.0, std::abs(q)))
        throw NumericalError("sinr_oc: quadratic form is not real");
    return q.real() / e_i;
}

double sinr_oc(const linalg::ComplexVector &c, const linalg::HermitianMatrix &r, const OcScenario &s)
{
    return sinr_oc(c, r, s.e_i, s.sigma2_noise);
}

double sinr_from_eigen(const std::vector<double> &lambdas, const std::vector<double> &p, double e_i,
                       double sigma2_noise)
{
    if (lambdas.size() != p.size())
        throw std::invalid_argument("sinr_from_eigen: size mismatch");
    if (!(e_i > 0.0))
        throw std::invalid_argument("sinr_from_eigen: interferer power must be positive");
    check_noise(sigma2_noise);
    const double s = sigma2_noise / e_i;
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        sum += p[k] / (lambdas[k] + s);
    return sum / e_i;
}

std::vector<McEstimate> ser_mc_sweep(const OcScenario &s, const std::vector<double> &noise_powers, const McConfig &cfg,
                                     PeRule rule, SinrRoute route)
{
    s.validate();
    for (double n : noise_powers)
        check_noise(n);
    const QamConstants qam = qam_constants(s.qam_order);
    const std::size_t n_r = s.n_r;
    const std::size_t n_i = s.n_i;

    auto acc = run_trials(cfg, kTagSerTrue, noise_powers.size(), [&](RandomStream &rng, double *out) {
        linalg::HermitianMatrix r(n_r);
        if (n_i > 0)
            r = linalg::gram(fading::sample_channel_matrix(s.interferer_model, n_r, n_i, rng));
        if (route == SinrRoute::direct_solve)
        {
            const auto c = fading::sample_rayleigh_vector(n_r, rng);
            for (std::size_t k = 0; k < noise_powers.size(); ++k)
                out[k] = pe(qam, sinr_oc(c, r, s.e_i, noise_powers[k]), rule);
        }
        else
        {
            const auto lambdas = n_i > 0 ? linalg::psd_eigenvalues(r) : std::vector<double>(n_r, 0.0);
            std::vector<double> p(n_r);
            for (auto &v : p)
                v = rng.exponential();
            for (std::size_t k = 0; k < noise_powers.size(); ++k)
                out[k] = pe(qam, sinr_from_eigen(lambdas, p, s.e_i, noise_powers[k]), rule);
        }
    });
    return estimates(acc);
}

McEstimate ser_mc(const OcScenario &s, const McConfig &cfg, PeRule rule, SinrRoute route)
{
    return ser_mc_sweep(s, {s.sigma2_noise}, cfg, rule, route).front();
}

std::vector<McEstimate> ser_surrogate_mc_sweep(const OcScenario &s, const std::vector<double> &noise_powers,
                                               const McConfig &cfg)
{
    s.validate();
    for (double n : noise_powers)
        check_noise(n);
    if (s.n_i == 0)
        throw std::invalid_argument("ser_surrogate_mc_sweep: needs at least one interferer");
    const QamConstants qam = qam_constants(s.qam_order);
    const std::size_t n1 = std::min(s.n_r, s.n_i);
    const std::size_t n2 = std::max(s.n_r, s.n_i);
    const approx::WishartApprox surrogate = approx::build_wishart(s.interferer_model, n1, n2);

    auto acc = run_trials(cfg, kTagSerSurrogate, noise_powers.size(), [&](RandomStream &rng, double *out) {
        // R has the surrogate's n1 eigenvalues plus N_R - n1 zeros.
        std::vector<double> lambdas = linalg::psd_eigenvalues(approx::sample_wishart(surrogate, rng));
        lambdas.resize(s.n_r, 0.0);
        std::vector<double> p(s.n_r);
        for (auto &v : p)
            v = rng.exponential();
        for (std::size_t k = 0; k < noise_powers.size(); ++k)
            out[k] = pe_exponential(qam, sinr_from_eigen(lambdas, p, s.e_i, noise_powers[k]));
    });
    return estimates(acc);
}

ClosedSer ser_closed(const OcScenario &s, const approx::WishartApprox &interferer)
{
    s.validate();
    const QamConstants qam = qam_constants(s.qam_order);
    const double noise = s.sigma2_noise / s.e_i;

    std::size_t zero_eigs = s.n_r;
    if (s.n_i > 0)
    {
        if (interferer.dim() != std::min(s.n_r, s.n_i) || interferer.dof != std::max(s.n_r, s.n_i))
            throw std::invalid_argument("ser_closed: surrogate dimensions do not match the scenario");
        zero_eigs = s.n_r - interferer.dim();
    }

    std::optional<EigenDeterminantForm> form;
    if (s.n_i > 0)
        form.emplace(interferer);
    double total = 0.0;
    for (std::size_t l = 0; l < qam.a.size(); ++l)
    {
        const double b = qam.b[l] / s.e_i;
        // Each zero eigenvalue of R contributes E[exp(-b p / s)] = s / (s + b).
        const double zero_factor = std::pow(noise / (noise + b), static_cast<double>(zero_eigs));
        double j = 1.0;
        if (form)
            j = form->full([noise, b](int m, double w) { return specfun::ratio_moment_integral(m, w, noise, b); });
        total += qam.a[l] * zero_factor * j;
    }
    if (!std::isfinite(total))
        throw NumericalError("ser_closed: result is not finite");
    const double clamped = std::clamp(total, 0.0, 1.0);
    return {clamped, clamped != total};
}

ClosedSer ser_closed_kmu(const OcScenario &s)
{
    const auto *p = std::get_if<fading::KappaMuParams>(&s.interferer_model);
    if (p == nullptr)
        throw std::invalid_argument("ser_closed_kmu: interferer model is not kappa-mu");
    return ser_closed(s);
}

ClosedSer ser_closed_identity_cov(const OcScenario &s, double omega)
{
    s.validate();
    if (!(omega > 0.0))
        throw std::invalid_argument("ser_closed_identity_cov: omega must be positive");
    if (s.n_i == 0)
        return ser_closed(s, approx::WishartApprox(1, approx::CovarianceModel(1, omega, 0.0)));
    const std::size_t n1 = std::min(s.n_r, s.n_i);
    return ser_closed(s, approx::WishartApprox(std::max(s.n_r, s.n_i), approx::CovarianceModel(n1, omega, 0.0)));
}

ClosedSer ser_closed(const OcScenario &s)
{
    s.validate();
    if (s.n_i == 0)
        return ser_closed(s, approx::WishartApprox(1, approx::CovarianceModel(1, 1.0, 0.0)));
    const std::size_t n1 = std::min(s.n_r, s.n_i);
    const std::size_t n2 = std::max(s.n_r, s.n_i);
    return ser_closed(s, approx::build_wishart(s.interferer_model, n1, n2));
}

} // namespace wishfade::oc
