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

#ifndef WISHFADE_FADING_HPP
#define WISHFADE_FADING_HPP

#include "wishfade/linalg.hpp"
#include "wishfade/random.hpp"

#include <string>
#include <variant>

namespace wishfade::fading
{

using linalg::Complex;

/// kappa-mu fading. Each of x = Re h and y = Im h is the signed square root
/// of a noncentral chi-square built from mu Gaussian clusters of variance
/// sigma2, with total in-phase / quadrature line-of-sight amplitudes p and q:
///   kappa = (p^2 + q^2) / (2 mu sigma2).
struct KappaMuParams
{
    double kappa = 0.0;
    double mu = 1.0;
    double sigma2 = 0.5;
    double p = 0.0;
    double q = 0.0;

    // Splits the line-of-sight power so that p^2 = inphase_fraction * 2 kappa mu sigma2.
    // The default fraction 1/2 gives p = q = sigma sqrt(kappa mu).
    static KappaMuParams from_kappa(double kappa, double mu, double sigma2, double inphase_fraction = 0.5);

    void validate() const;
    bool has_integer_mu() const;
};

/// eta-mu fading, product-form density with
///   Omega_X = (1 - eta) Omega / 2,  Omega_Y = (1 + eta) Omega / 2.
struct EtaMuParams
{
    double eta = 0.0;
    double mu = 1.0;
    double omega = 1.0;

    double omega_x() const { return (1.0 - eta) * omega / 2.0; }
    double omega_y() const { return (1.0 + eta) * omega / 2.0; }
    void validate() const;
};

// Entries CN(mean, 2 sigma2): each real component has variance sigma2.
struct RicianParams
{
    Complex mean{0.0, 0.0};
    double sigma2 = 0.5;

    void validate() const;
};

// Nakagami-m with power Omega, realised as eta-mu with eta = 0 and mu = m/2.
struct NakagamiParams
{
    double m = 1.0;
    double omega = 1.0;

    void validate() const;
    EtaMuParams as_eta_mu() const { return {0.0, m / 2.0, omega}; }
};

// Circular Gaussian entries, per-component variance sigma2.
struct RayleighParams
{
    double sigma2 = 0.5;

    void validate() const;
};

using FadingModel = std::variant<KappaMuParams, EtaMuParams, RicianParams, NakagamiParams, RayleighParams>;

void validate(const FadingModel &model);
std::string model_name(const FadingModel &model);

// E|h|^2 for one entry.
double mean_power(const FadingModel &model);

// Draws for a single entry. sample_kmu requires integer mu.
Complex sample_kmu(const KappaMuParams &params, RandomStream &rng);
Complex sample_eta_mu(const EtaMuParams &params, RandomStream &rng);
Complex sample(const FadingModel &model, RandomStream &rng);

/// Density of one kappa-mu component with line-of-sight amplitude `losc`:
///   f(x) = |x|^{mu/2} / (2 sigma2 |losc|^{mu/2-1}) exp(-(x-losc)^2 / (2 sigma2))
///          sech(losc x / sigma2) I_{mu/2-1}(|losc x| / sigma2)
/// evaluated in log form; losc = 0 and x = 0 use the analytic limits.
double log_pdf_kmu_component(double losc, double sigma2, double mu, double x);
double pdf_kmu_component(double losc, double sigma2, double mu, double x);

// Joint density of (x, y): product of the two component densities.
double pdf_kmu(const KappaMuParams &params, double x, double y);

// Density of one eta-mu component with power omega_c.
double pdf_eta_mu_component(double mu, double omega_c, double x);
double pdf_eta_mu(const EtaMuParams &params, double x, double y);

// n1 x n2 matrix of i.i.d. entries.
linalg::ComplexMatrix sample_channel_matrix(const FadingModel &model, std::size_t n1, std::size_t n2,
                                            RandomStream &rng);

// i.i.d. CN(0, 1) entries.
linalg::ComplexVector sample_rayleigh_vector(std::size_t n, RandomStream &rng);

} // namespace wishfade::fading

#endif
