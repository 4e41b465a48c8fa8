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

#ifndef WISHFADE_OC_HPP
#define WISHFADE_OC_HPP

#include "wishfade/approx.hpp"
#include "wishfade/fading.hpp"
#include "wishfade/linalg.hpp"
#include "wishfade/montecarlo.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace wishfade::oc
{

/// Square M-QAM constants:
///   Pe(eta) = k1 Q(sqrt(k2 eta)) - k3 Q(sqrt(k2 eta))^2
///          ~ sum_l a_l exp(-b_l eta)
struct QamConstants
{
    int m;
    double k1;
    double k2;
    double k3;
    std::array<double, 5> a;
    std::array<double, 5> b;
};

QamConstants qam_constants(int m);

// Gaussian tail probability Q(x) = P(N(0,1) > x).
double q_function(double x);

double pe_exact(const QamConstants &qam, double sinr);
double pe_exponential(const QamConstants &qam, double sinr);

/// Optimum combining with a CN(0, I) desired channel of unit symbol energy,
/// n_i interferers of mean power e_i whose channels have i.i.d. entries from
/// `interferer_model`, and noise power sigma2_noise.
struct OcScenario
{
    std::size_t n_r = 2;
    std::size_t n_i = 1;
    double e_i = 1.0;
    double sigma2_noise = 1.0;
    int qam_order = 4;
    fading::FadingModel interferer_model = fading::RayleighParams{0.5};

    void validate() const;
};

// (1/E_I) c^H (R + sigma2/E_I I)^{-1} c by Hermitian solve.
double sinr_oc(const linalg::ComplexVector &c, const linalg::HermitianMatrix &r, double e_i, double sigma2_noise);
double sinr_oc(const linalg::ComplexVector &c, const linalg::HermitianMatrix &r, const OcScenario &s);

// sum_k (p_k / E_I) / (lambda_k + sigma2/E_I).
double sinr_from_eigen(const std::vector<double> &lambdas, const std::vector<double> &p, double e_i,
                       double sigma2_noise);

enum class PeRule
{
    exact,       // k1 Q - k3 Q^2
    exponential, // sum_l a_l exp(-b_l eta)
};

enum class SinrRoute
{
    direct_solve,      // draw c and solve with R
    eigen_exponential, // eigenvalues of R with i.i.d. unit exponential weights
};

// Average Pe over interferer and user channels, one draw per trial shared by
// all noise powers. The scenario's sigma2_noise is ignored.
std::vector<McEstimate> ser_mc_sweep(const OcScenario &s, const std::vector<double> &noise_powers, const McConfig &cfg,
                                     PeRule rule = PeRule::exact, SinrRoute route = SinrRoute::direct_solve);

McEstimate ser_mc(const OcScenario &s, const McConfig &cfg, PeRule rule = PeRule::exact,
                  SinrRoute route = SinrRoute::direct_solve);

// Interferer Gram eigenvalues drawn from the surrogate; exponential Pe rule.
std::vector<McEstimate> ser_surrogate_mc_sweep(const OcScenario &s, const std::vector<double> &noise_powers,
                                               const McConfig &cfg);

struct ClosedSer
{
    double value;
    bool clamped; // the raw expression fell outside [0, 1]
};

// Closed form for an explicit surrogate of the interferer Gram matrix
// (n1 = min(N_R, N_I), n2 = max(N_R, N_I)). Ignores the scenario's model.
ClosedSer ser_closed(const OcScenario &s, const approx::WishartApprox &interferer);

ClosedSer ser_closed_kmu(const OcScenario &s);
ClosedSer ser_closed_identity_cov(const OcScenario &s, double omega);

// Dispatches on the interferer model.
ClosedSer ser_closed(const OcScenario &s);

} // namespace wishfade::oc

#endif
