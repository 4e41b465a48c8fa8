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

#include "wishfade/fading.hpp"
#include "wishfade/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wishfade::fading
{

namespace
{

void check_positive(double v, const char *what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

// Signed square root of a noncentral chi-square with `mu` terms. The sign
// law P(+) = e^{t} / (2 cosh t), t = losc r / sigma2, is what turns the
// noncentral chi density of r into the sech-weighted component density.
double sample_kmu_component(double losc, double sigma2, int mu, RandomStream &rng)
{
    const double sigma = std::sqrt(sigma2);
    const double shift = losc / std::sqrt(static_cast<double>(mu));
    double r2 = 0.0;
    for (int i = 0; i < mu; ++i)
    {
        const double g = sigma * rng.normal() + shift;
        r2 += g * g;
    }
    const double r = std::sqrt(r2);
    const double t = losc * r / sigma2;
    const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * t));
    return rng.bernoulli(p_plus) ? r : -r;
}

double sample_eta_mu_component(double mu, double omega_c, RandomStream &rng)
{
    if (omega_c == 0.0)
        return 0.0;
    const double mag = std::sqrt(rng.gamma(mu, omega_c / mu));
    return rng.bernoulli(0.5) ? mag : -mag;
}

double log_cosh(double t)
{
    const double a = std::abs(t);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

} // namespace

KappaMuParams KappaMuParams::from_kappa(double kappa, double mu, double sigma2, double inphase_fraction)
{
    if (!(inphase_fraction >= 0.0 && inphase_fraction <= 1.0))
        throw std::invalid_argument("kappa-mu: in-phase fraction must lie in [0, 1]");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("kappa-mu: kappa must be nonnegative");
    check_positive(mu, "kappa-mu: mu");
    check_positive(sigma2, "kappa-mu: sigma2");
    const double los = 2.0 * kappa * mu * sigma2;
    KappaMuParams out;
    out.kappa = kappa;
    out.mu = mu;
    out.sigma2 = sigma2;
    out.p = std::sqrt(inphase_fraction * los);
    out.q = std::sqrt((1.0 - inphase_fraction) * los);
    return out;
}

void KappaMuParams::validate() const
{
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("kappa-mu: kappa must be nonnegative and finite");
    check_positive(mu, "kappa-mu: mu");
    check_positive(sigma2, "kappa-mu: sigma2");
    if (!std::isfinite(p) || !std::isfinite(q))
        throw std::invalid_argument("kappa-mu: p and q must be finite");
    const double los = 2.0 * kappa * mu * sigma2;
    if (std::abs(p * p + q * q - los) > 1e-9 * std::max(los, sigma2))
        throw std::invalid_argument("kappa-mu: p^2 + q^2 must equal 2 kappa mu sigma2");
}

bool KappaMuParams::has_integer_mu() const
{
    return mu >= 1.0 && mu == std::floor(mu) && mu < 1e6;
}

void EtaMuParams::validate() const
{
    if (!(eta >= -1.0 && eta <= 1.0))
        throw std::invalid_argument("eta-mu: eta must lie in [-1, 1]");
    check_positive(mu, "eta-mu: mu");
    check_positive(omega, "eta-mu: omega");
}

void RicianParams::validate() const
{
    if (!std::isfinite(mean.real()) || !std::isfinite(mean.imag()))
        throw std::invalid_argument("rician: mean must be finite");
    check_positive(sigma2, "rician: sigma2");
}

void NakagamiParams::validate() const
{
    if (!(m >= 0.5) || !std::isfinite(m))
        throw std::invalid_argument("nakagami: m must be at least 1/2");
    check_positive(omega, "nakagami: omega");
}

void RayleighParams::validate() const
{
    check_positive(sigma2, "rayleigh: sigma2");
}

void validate(const FadingModel &model)
{
    std::visit([](const auto &p) { p.validate(); }, model);
}

std::string model_name(const FadingModel &model)
{
    struct Visitor
    {
        std::string operator()(const KappaMuParams &) const { return "kappa-mu"; }
        std::string operator()(const EtaMuParams &) const { return "eta-mu"; }
        std::string operator()(const RicianParams &) const { return "rician"; }
        std::string operator()(const NakagamiParams &) const { return "nakagami"; }
        std::string operator()(const RayleighParams &) const { return "rayleigh"; }
    };
    return std::visit(Visitor{}, model);
}

double mean_power(const FadingModel &model)
{
    struct Visitor
    {
        double operator()(const KappaMuParams &p) const { return 2.0 * p.sigma2 * (1.0 + p.kappa) * p.mu; }
        double operator()(const EtaMuParams &p) const { return p.omega; }
        double operator()(const RicianParams &p) const { return std::norm(p.mean) + 2.0 * p.sigma2; }
        double operator()(const NakagamiParams &p) const { return p.omega; }
        double operator()(const RayleighParams &p) const { return 2.0 * p.sigma2; }
    };
    return std::visit(Visitor{}, model);
}

Complex sample_kmu(const KappaMuParams &params, RandomStream &rng)
{
    if (!params.has_integer_mu())
        throw std::domain_error("kappa-mu sampler requires a positive integer mu");
    const int mu = static_cast<int>(params.mu);
    const double x = sample_kmu_component(params.p, params.sigma2, mu, rng);
    const double y = sample_kmu_component(params.q, params.sigma2, mu, rng);
    return {x, y};
}

Complex sample_eta_mu(const EtaMuParams &params, RandomStream &rng)
{
    const double x = sample_eta_mu_component(params.mu, params.omega_x(), rng);
    const double y = sample_eta_mu_component(params.mu, params.omega_y(), rng);
    return {x, y};
}

Complex sample(const FadingModel &model, RandomStream &rng)
{
    struct Visitor
    {
        RandomStream &rng;
        Complex operator()(const KappaMuParams &p) const { return sample_kmu(p, rng); }
        Complex operator()(const EtaMuParams &p) const { return sample_eta_mu(p, rng); }
        Complex operator()(const RicianParams &p) const
        {
            const double s = std::sqrt(p.sigma2);
            const double x = p.mean.real() + s * rng.normal();
            const double y = p.mean.imag() + s * rng.normal();
            return {x, y};
        }
        Complex operator()(const NakagamiParams &p) const { return sample_eta_mu(p.as_eta_mu(), rng); }
        Complex operator()(const RayleighParams &p) const
        {
            const double s = std::sqrt(p.sigma2);
            const double x = s * rng.normal();
            const double y = s * rng.normal();
            return {x, y};
        }
    };
    return std::visit(Visitor{rng}, model);
}

double log_pdf_kmu_component(double losc, double sigma2, double mu, double x)
{
    check_positive(sigma2, "kappa-mu pdf: sigma2");
    check_positive(mu, "kappa-mu pdf: mu");
    const double two_s2 = 2.0 * sigma2;
    const double ax = std::abs(x);
    const double t = losc * x / sigma2;
    const double z = std::abs(t);
    if (losc == 0.0 || ax == 0.0)
    {
        // I_nu(z) ~ (z/2)^nu / Gamma(nu+1) as z -> 0, which leaves
        // |x|^{mu-1} exp(-(x-losc)^2 / (2 sigma2)) / ((2 sigma2)^{mu/2} Gamma(mu/2)).
        const double log_norm = -0.5 * mu * std::log(two_s2) - std::lgamma(0.5 * mu);
        const double gauss = -(x - losc) * (x - losc) / two_s2;
        if (ax == 0.0)
        {
            if (mu == 1.0)
                return log_norm + gauss;
            return mu > 1.0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
        }
        return log_norm + (mu - 1.0) * std::log(ax) + gauss;
    }
    const double nu = 0.5 * mu - 1.0;
    const double log_i = std::log(specfun::bessel_i_scaled(nu, z)) + z;
    return 0.5 * mu * std::log(ax) - std::log(two_s2) - nu * std::log(std::abs(losc)) -
           (x - losc) * (x - losc) / two_s2 - log_cosh(t) + log_i;
}

double pdf_kmu_component(double losc, double sigma2, double mu, double x)
{
    return std::exp(log_pdf_kmu_component(losc, sigma2, mu, x));
}

double pdf_kmu(const KappaMuParams &params, double x, double y)
{
    params.validate();
    return std::exp(log_pdf_kmu_component(params.p, params.sigma2, params.mu, x) +
                    log_pdf_kmu_component(params.q, params.sigma2, params.mu, y));
}

double pdf_eta_mu_component(double mu, double omega_c, double x)
{
    check_positive(mu, "eta-mu pdf: mu");
    check_positive(omega_c, "eta-mu pdf: component power");
    const double ax = std::abs(x);
    const double log_norm = mu * std::log(mu) - mu * std::log(omega_c) - std::lgamma(mu);
    if (ax == 0.0)
    {
        if (mu == 0.5)
            return std::exp(log_norm);
        return mu > 0.5 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::exp(log_norm + (2.0 * mu - 1.0) * std::log(ax) - mu * x * x / omega_c);
}

double pdf_eta_mu(const EtaMuParams &params, double x, double y)
{
    params.validate();
    if (std::abs(params.eta) == 1.0)
        throw std::domain_error("eta-mu pdf: |eta| = 1 has no density (one component is degenerate)");
    return pdf_eta_mu_component(params.mu, params.omega_x(), x) * pdf_eta_mu_component(params.mu, params.omega_y(), y);
}

linalg::ComplexMatrix sample_channel_matrix(const FadingModel &model, std::size_t n1, std::size_t n2,
                                            RandomStream &rng)
{
    linalg::ComplexMatrix h(n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            h(i, j) = sample(model, rng);
    return h;
}

linalg::ComplexVector sample_rayleigh_vector(std::size_t n, RandomStream &rng)
{
    const double s = std::sqrt(0.5);
    linalg::ComplexVector v(n);
    for (auto &z : v)
    {
        const double x = s * rng.normal();
        const double y = s * rng.normal();
        z = {x, y};
    }
    return v;
}

} // namespace wishfade::fading
