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

#include "wishfade/capacity.hpp"
#include "wishfade/eigen_form.hpp"
#include "wishfade/errors.hpp"
#include "wishfade/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wishfade::capacity
{

namespace
{

constexpr std::uint64_t kTagCapacityTrue = 0x31;
constexpr std::uint64_t kTagCapacitySurrogate = 0x32;

void check_gain(double g)
{
    if (!(g >= 0.0) || !std::isfinite(g))
        throw std::invalid_argument("capacity: SNR must be nonnegative and finite");
}

double log2_det_from_eigenvalues(const std::vector<double> &eig, double gain)
{
    double sum = 0.0;
    for (double l : eig)
        sum += std::log1p(gain * l);
    return sum / std::numbers::ln2;
}

} // namespace

void CapacityScenario::validate() const
{
    fading::validate(model);
    if (n_r < 1 || n_t < 1)
        throw std::invalid_argument("capacity: antenna counts must be at least 1");
    check_gain(rho);
}

std::size_t surrogate_n1(std::size_t n_r, std::size_t n_t)
{
    return std::min(n_r, n_t);
}

std::size_t surrogate_n2(std::size_t n_r, std::size_t n_t)
{
    return std::max(n_r, n_t);
}

std::vector<McEstimate> capacity_mc_sweep(const fading::FadingModel &model, std::size_t n_r, std::size_t n_t,
                                          const std::vector<double> &rhos, const McConfig &cfg)
{
    CapacityScenario probe{model, n_r, n_t, 0.0};
    probe.validate();
    for (double r : rhos)
        check_gain(r);
    const double inv_nt = 1.0 / static_cast<double>(n_t);
    auto acc = run_trials(cfg, kTagCapacityTrue, rhos.size(), [&](RandomStream &rng, double *out) {
        // The nonzero eigenvalues of H H^H and H^H H coincide; the smaller Gram is cheaper.
        const auto h = fading::sample_channel_matrix(model, n_r, n_t, rng);
        const auto x = n_r <= n_t ? linalg::gram(h) : linalg::gram(h.adjoint());
        const auto eig = linalg::psd_eigenvalues(x);
        for (std::size_t k = 0; k < rhos.size(); ++k)
            out[k] = log2_det_from_eigenvalues(eig, rhos[k] * inv_nt);
    });
    std::vector<McEstimate> out;
    out.reserve(acc.size());
    for (const auto &a : acc)
        out.push_back(a.estimate());
    return out;
}

McEstimate capacity_mc(const CapacityScenario &s, const McConfig &cfg)
{
    return capacity_mc_sweep(s.model, s.n_r, s.n_t, {s.rho}, cfg).front();
}

std::vector<McEstimate> capacity_surrogate_mc_sweep(const approx::WishartApprox &approx,
                                                    const std::vector<double> &gains, const McConfig &cfg)
{
    for (double g : gains)
        check_gain(g);
    auto acc = run_trials(cfg, kTagCapacitySurrogate, gains.size(), [&](RandomStream &rng, double *out) {
        const auto eig = linalg::psd_eigenvalues(approx::sample_wishart(approx, rng));
        for (std::size_t k = 0; k < gains.size(); ++k)
            out[k] = log2_det_from_eigenvalues(eig, gains[k]);
    });
    std::vector<McEstimate> out;
    out.reserve(acc.size());
    for (const auto &a : acc)
        out.push_back(a.estimate());
    return out;
}

void EigDensityTwo::validate() const
{
    if (n1 < 1 || n2 < n1)
        throw std::invalid_argument("EigDensityTwo: requires 1 <= n1 <= n2");
    if (!(w1 > 0.0) || !(w2 > 0.0))
        throw std::invalid_argument("EigDensityTwo: w1 and w2 must be positive");
    if (n1 > 1 && w1 == w2)
        throw std::domain_error("EigDensityTwo: w1 = w2 is degenerate; use the scaled-identity density");
}

double eig_density_two(const EigDensityTwo &d, const std::vector<double> &lambdas)
{
    d.validate();
    if (lambdas.size() != d.n1)
        throw std::invalid_argument("eig_density_two: expected n1 eigenvalues");
    for (double l : lambdas)
        if (!(l >= 0.0))
            throw std::invalid_argument("eig_density_two: eigenvalues must be nonnegative");

    const std::size_t n1 = d.n1;
    const double base_power = static_cast<double>(d.n2) - static_cast<double>(n1);
    if (n1 == 1)
    {
        // Gamma density with shape n2 and rate w2.
        const double l = lambdas[0];
        if (l == 0.0)
            return d.n2 == 1 ? d.w2 : 0.0;
        return std::exp(static_cast<double>(d.n2) * std::log(d.w2) + base_power * std::log(l) - d.w2 * l -
                        std::lgamma(static_cast<double>(d.n2)));
    }

    double log_pref = 0.0;
    double sign = 1.0;
    two_eigen_prefactor(n1, d.n2, d.w1, d.w2, log_pref, sign);

    // det[(-l_i)^{j-1} e^{-l_i w1} (j < n1) | e^{-l_i w2}] * prod_{i<j} (l_j - l_i) * prod l_i^{n2-n1}
    linalg::RealMatrix cols(n1);
    for (std::size_t i = 0; i < n1; ++i)
    {
        const double l = lambdas[i];
        double power = 1.0;
        for (std::size_t j = 0; j + 1 < n1; ++j)
        {
            cols(i, j) = power * std::exp(-l * d.w1);
            power *= -l;
        }
        cols(i, n1 - 1) = std::exp(-l * d.w2);
    }
    const linalg::SignedLogDet det = linalg::log_det(cols);
    if (det.sign == 0.0)
        return 0.0;
    double vander_sign = 1.0;
    double log_rest = 0.0;
    for (std::size_t i = 0; i < n1; ++i)
    {
        if (base_power > 0.0)
        {
            if (lambdas[i] == 0.0)
                return 0.0;
            log_rest += base_power * std::log(lambdas[i]);
        }
        for (std::size_t j = i + 1; j < n1; ++j)
        {
            const double diff = lambdas[j] - lambdas[i];
            if (diff == 0.0)
                return 0.0;
            if (diff < 0.0)
                vander_sign = -vander_sign;
            log_rest += std::log(std::abs(diff));
        }
    }
    const double log_n1_factorial = std::lgamma(static_cast<double>(n1) + 1.0);
    const double value =
        sign * det.sign * vander_sign * std::exp(log_pref + det.log_abs + log_rest - log_n1_factorial);
    // The density is nonnegative; rounding in the determinant can leave a tiny negative residue.
    return std::max(value, 0.0);
}

double capacity_closed(const approx::WishartApprox &approx, double gain)
{
    check_gain(gain);
    if (gain == 0.0)
        return 0.0;
    const EigenDeterminantForm form(approx);
    const auto base = [](int m, double w) { return specfun::gamma_moment(m, w); };
    const auto logged = [gain](int m, double w) {
        return specfun::log_moment_integral(m, w, gain) / std::numbers::ln2;
    };
    const double c = form.column_sum(base, logged);
    if (!std::isfinite(c))
        throw NumericalError("capacity closed form is not finite");
    return c;
}

double capacity_closed_kmu(const fading::KappaMuParams &params, std::size_t n_r, std::size_t n_t, double rho)
{
    const CapacityScenario s{params, n_r, n_t, rho};
    s.validate();
    const auto approx = approx::build_wishart_kmu(params, surrogate_n1(n_r, n_t), surrogate_n2(n_r, n_t));
    return capacity_closed(approx, s.gain());
}

double capacity_closed_identity_cov(double omega, std::size_t n_r, std::size_t n_t, double rho)
{
    if (!(omega > 0.0))
        throw std::invalid_argument("capacity: omega must be positive");
    if (n_r < 1 || n_t < 1)
        throw std::invalid_argument("capacity: antenna counts must be at least 1");
    check_gain(rho);
    const std::size_t n1 = surrogate_n1(n_r, n_t);
    const approx::WishartApprox approx(surrogate_n2(n_r, n_t), approx::CovarianceModel(n1, omega, 0.0));
    return capacity_closed(approx, rho / static_cast<double>(n_t));
}

double capacity_closed(const CapacityScenario &s)
{
    s.validate();
    const auto approx = approx::build_wishart(s.model, surrogate_n1(s.n_r, s.n_t), surrogate_n2(s.n_r, s.n_t));
    return capacity_closed(approx, s.gain());
}

double asymptotic_capacity_identity(double rho, double omega)
{
    if (!(rho >= 0.0) || !(omega > 0.0))
        throw std::invalid_argument("asymptotic capacity: requires rho >= 0 and omega > 0");
    return specfun::semicircle_log_integral(rho * omega);
}

double asymptotic_capacity_kmu_high_snr(double rho, const approx::CovarianceModel &cov)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("asymptotic capacity: rho must be positive");
    return std::log2(rho / std::numbers::e) + std::log2(cov.eig_repeated());
}

} // namespace wishfade::capacity
