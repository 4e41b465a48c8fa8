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

#ifndef WISHFADE_CAPACITY_HPP
#define WISHFADE_CAPACITY_HPP

#include "wishfade/approx.hpp"
#include "wishfade/fading.hpp"
#include "wishfade/montecarlo.hpp"

#include <cstddef>
#include <vector>

namespace wishfade::capacity
{

// Ergodic capacity E[log2 det(I + rho/N_T H H^H)] with H an N_R x N_T matrix
// of i.i.d. entries. rho is linear.
struct CapacityScenario
{
    fading::FadingModel model;
    std::size_t n_r = 1;
    std::size_t n_t = 1;
    double rho = 1.0;

    void validate() const;
    double gain() const { return rho / static_cast<double>(n_t); }
};

// (n1, n2) = (min, max)(N_R, N_T): the surrogate always describes the
// smaller Gram matrix, H H^H or H^H H.
std::size_t surrogate_n1(std::size_t n_r, std::size_t n_t);
std::size_t surrogate_n2(std::size_t n_r, std::size_t n_t);

McEstimate capacity_mc(const CapacityScenario &s, const McConfig &cfg);

// One channel draw per trial serves every SNR point.
std::vector<McEstimate> capacity_mc_sweep(const fading::FadingModel &model, std::size_t n_r, std::size_t n_t,
                                          const std::vector<double> &rhos, const McConfig &cfg);

// Same estimator with the Gram eigenvalues drawn from the surrogate itself.
std::vector<McEstimate> capacity_surrogate_mc_sweep(const approx::WishartApprox &approx,
                                                    const std::vector<double> &gains, const McConfig &cfg);

// Density of the unordered eigenvalues of CW_{n1}(n2, Sigma) with Sigma^{-1}
// eigenvalues w1 (multiplicity n1-1) and w2 (multiplicity 1).
struct EigDensityTwo
{
    std::size_t n1;
    std::size_t n2;
    double w1;
    double w2;

    void validate() const;
};

double eig_density_two(const EigDensityTwo &d, const std::vector<double> &lambdas);

// sum_k det(N^k): the closed form for a given surrogate and per-eigenvalue
// gain rho / N_T.
double capacity_closed(const approx::WishartApprox &approx, double gain);

double capacity_closed_kmu(const fading::KappaMuParams &params, std::size_t n_r, std::size_t n_t, double rho);
double capacity_closed_identity_cov(double omega, std::size_t n_r, std::size_t n_t, double rho);

// Dispatches on the fading model of the scenario.
double capacity_closed(const CapacityScenario &s);

// Per-antenna capacity for N_T = N_R -> infinity with Sigma = omega I.
double asymptotic_capacity_identity(double rho, double omega);

// High-SNR per-antenna asymptote log2(rho/e) + log2(a - y).
double asymptotic_capacity_kmu_high_snr(double rho, const approx::CovarianceModel &cov);

} // namespace wishfade::capacity

#endif
