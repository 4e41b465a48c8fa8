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

#ifndef WISHFADE_SPECFUN_HPP
#define WISHFADE_SPECFUN_HPP

#include <functional>

namespace wishfade::specfun
{

// Truncation control for the double series (Appell Psi1) and similar sums.
struct SeriesControl
{
    double rel_tol = 1e-12;
    int max_terms = 20000;

    void validate() const;
};

// Natural log of Gamma(x), x > 0.
double ln_gamma(double x);

// Digamma psi(x), x > 0. Absolute error below 1e-12.
double digamma(double x);

// Modified Bessel function of the first kind I_order(x) for order >= -1/2, x >= 0.
double bessel_i(double order, double x);

// exp(-x) * I_order(x). Stays finite for any x where bessel_i would overflow.
double bessel_i_scaled(double order, double x);

// Generalized exponential integral E_n(x) = int_1^inf exp(-x t) t^-n dt, n >= 1, x > 0.
double expint_en(int n, double x);

// exp(x) * E_n(x), free of overflow/underflow for large x.
double expint_en_scaled(int n, double x);

/// Confluent Appell function
///
///   Psi1(a, b; c1, c2; x, y) = sum_{n,k} (a)_{n+k} (b)_k / ((c1)_k (c2)_n) x^k/k! y^n/n!
///
/// for 0 <= x < 1. Each inner series in k is summed until its geometric tail
/// bound drops below ctl.rel_tol of the partial sum; the outer series in n is
/// truncated the same way once its term ratio settles below one. Throws
/// NonConvergenceError if either series needs more than ctl.max_terms terms,
/// which happens as x -> 1.
double appell_psi1(double a, double b, double c1, double c2, double x, double y,
                   const SeriesControl &ctl = {});

// Gauss hypergeometric 2F1(a, b; c; x) by direct series, |x| < 1.
double hyp2f1(double a, double b, double c, double x, const SeriesControl &ctl = {});

// Kummer 1F1(a; c; x) by direct series.
double hyp1f1(double a, double c, double x, const SeriesControl &ctl = {});

// int_0^inf lambda^n exp(-w lambda) d lambda = n! / w^(n+1).
double gamma_moment(int n, double w);

// log of gamma_moment, for products that would overflow.
double log_gamma_moment(int n, double w);

/// int_0^inf ln(1 + a lambda) lambda^n exp(-w lambda) d lambda
///
/// Integration by parts reduces the integral to
///   n!/w^(n+1) * sum_{k=1}^{n+1} exp(z) E_k(z),   z = w/a,
/// which is what is evaluated. All terms are positive.
double log_moment_integral(int n, double w, double a);

/// int_0^inf (lambda + s)/(lambda + s + b) lambda^n exp(-w lambda) d lambda
///   = n!/w^(n+1) * (1 - b w exp((s+b)w) E_{n+1}((s+b)w))
double ratio_moment_integral(int n, double w, double s, double b);

// int_0^4 log2(1 + c lambda) (1/pi) sqrt(1/lambda - 1/4) d lambda, c >= 0.
double semicircle_log_integral(double c);

// Adaptive Gauss-Kronrod (7/15) quadrature on a finite interval. Throws
// NonConvergenceError when the interval budget is exhausted.
struct QuadratureControl
{
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 2000;
};

double integrate(const std::function<double(double)> &f, double lo, double hi,
                 const QuadratureControl &ctl = {});

} // namespace wishfade::specfun

#endif
