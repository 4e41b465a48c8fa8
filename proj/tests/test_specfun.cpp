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

#include "oracles.hpp"
#include "wishfade/errors.hpp"
#include "wishfade/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace wishfade;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
constexpr double kEuler = 0.57721566490153286060651209008240243;
}

TEST_CASE("series control rejects bad settings", "[specfun]")
{
    CHECK_THROWS_AS((specfun::SeriesControl{0.0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((specfun::SeriesControl{1e-12, 0}.validate()), std::invalid_argument);
    CHECK_NOTHROW(specfun::SeriesControl{}.validate());
}

TEST_CASE("ln_gamma at exact points", "[specfun]")
{
    CHECK(specfun::ln_gamma(1.0) == 0.0);
    CHECK_THAT(specfun::ln_gamma(5.0), WithinRel(std::log(24.0), 1e-13));
    CHECK_THAT(specfun::ln_gamma(0.5), WithinRel(0.5 * std::log(std::numbers::pi), 1e-13));
    CHECK_THROWS_AS(specfun::ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("digamma values, recurrence and reference", "[specfun]")
{
    CHECK_THAT(specfun::digamma(1.0), WithinAbs(-kEuler, 1e-12));
    CHECK_THAT(specfun::digamma(2.0), WithinAbs(1.0 - kEuler, 1e-12));
    for (double x : {1e-6, 0.01, 0.3, 0.9, 1.7, 4.2, 9.99, 10.0, 37.5, 1e3, 1e8})
    {
        CHECK_THAT(specfun::digamma(x + 1.0) - specfun::digamma(x) - 1.0 / x, WithinAbs(0.0, 1e-10 * std::max(1.0, 1.0 / x)));
        CHECK_THAT(specfun::digamma(x), WithinAbs(boost::math::digamma(x), 1e-12 * std::max(1.0, std::abs(boost::math::digamma(x)))));
    }
    CHECK_THROWS_AS(specfun::digamma(0.0), std::domain_error);
}

TEST_CASE("bessel_i at exact points", "[specfun]")
{
    CHECK(specfun::bessel_i(0.0, 0.0) == 1.0);
    CHECK(specfun::bessel_i(1.0, 0.0) == 0.0);
    const double half = std::sqrt(2.0 / (std::numbers::pi * 2.0)) * std::sinh(2.0);
    CHECK_THAT(specfun::bessel_i(0.5, 2.0), WithinRel(half, 1e-13));
    CHECK_THROWS_AS(specfun::bessel_i(-0.6, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_i(0.0, -1.0), std::domain_error);
}

TEST_CASE("bessel_i against a long ascending series", "[specfun]")
{
    // 80 terms of sum (x/2)^{2k+v} / (k! Gamma(k+v+1)) in long double.
    const long double v = 1.5L;
    const long double x = 3.7L;
    long double term = std::pow(x / 2.0L, v) / std::tgamma(v + 1.0L);
    long double sum = 0.0L;
    for (int k = 0; k < 80; ++k)
    {
        sum += term;
        term *= (x * x / 4.0L) / ((k + 1.0L) * (k + 1.0L + v));
    }
    CHECK_THAT(specfun::bessel_i(1.5, 3.7), WithinRel(static_cast<double>(sum), 1e-12));
}

TEST_CASE("bessel_i matches the reference on [0, 700]", "[specfun]")
{
    for (double v : {-0.5, 0.0, 0.5, 1.0, 2.5, 3.0})
        for (double x : {1e-3, 0.5, 1.0, 7.3, 25.0, 120.0, 400.0, 699.0})
        {
            const double ref = boost::math::cyl_bessel_i(v, x);
            CHECK_THAT(specfun::bessel_i(v, x), WithinRel(ref, 1e-10));
            CHECK_THAT(specfun::bessel_i_scaled(v, x), WithinRel(ref * std::exp(-x), 1e-10));
        }
}

TEST_CASE("bessel_i ratio identity", "[specfun]")
{
    // I_{v-1}(x) - I_{v+1}(x) = (2v/x) I_v(x)
    for (double v : {0.5, 1.0, 2.5})
        for (double x : {0.2, 3.0, 50.0})
        {
            const double lhs = specfun::bessel_i_scaled(v - 1.0, x) - specfun::bessel_i_scaled(v + 1.0, x);
            const double rhs = 2.0 * v / x * specfun::bessel_i_scaled(v, x);
            CHECK_THAT(lhs, WithinRel(rhs, 1e-10));
        }
}

TEST_CASE("expint_en against its defining integral", "[specfun]")
{
    for (int n : {1, 2, 4})
        for (double x : {0.05, 1.0, 2.5})
        {
            const double ref =
                oracle::integrate([&](double t) { return std::exp(-x * t) * std::pow(t, -n); }, 1.0,
                                  std::numeric_limits<double>::infinity());
            CHECK_THAT(specfun::expint_en(n, x), WithinRel(ref, 1e-10));
        }
}

TEST_CASE("expint_en recurrence and reference values", "[specfun]")
{
    for (int n = 1; n <= 12; ++n)
        for (double x : {1e-4, 0.3, 0.999, 1.0, 1.001, 4.0, 30.0, 200.0})
        {
            const double scale = std::exp(-x);
            const double r = n * specfun::expint_en(n + 1, x) - scale + x * specfun::expint_en(n, x);
            CHECK_THAT(r / scale, WithinAbs(0.0, 1e-10));
            const double ref = boost::math::expint(n, x);
            CHECK_THAT(specfun::expint_en(n, x), WithinRel(ref, 1e-10));
            CHECK_THAT(specfun::expint_en_scaled(n, x), WithinRel(ref * std::exp(x), 1e-10));
        }
}

TEST_CASE("expint_en large-argument asymptotics", "[specfun]")
{
    // x e^x E_n(x) = 1 - n/x + n(n+1)/x^2 - n(n+1)(n+2)/x^3 + ...
    for (int n : {1, 3})
        for (double x : {50.0, 500.0})
        {
            const double series = 1.0 - n / x + n * (n + 1.0) / (x * x) - n * (n + 1.0) * (n + 2.0) / (x * x * x);
            CHECK_THAT(specfun::expint_en(n, x) * x * std::exp(x), WithinRel(series, 1e-4));
        }
    CHECK_THAT(specfun::expint_en(1, 500.0) * 500.0 * std::exp(500.0), WithinRel(1.0, 0.01));
    CHECK_THROWS_AS(specfun::expint_en(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::expint_en(0, 1.0), std::domain_error);
}

TEST_CASE("appell_psi1 reduces to single series", "[specfun]")
{
    const double a = 2.5, b = 1.0, c1 = 1.5, c2 = 1.5;
    const double f21 = boost::math::hypergeometric_pFq({a, b}, {c1}, 0.4);
    CHECK_THAT(specfun::appell_psi1(a, b, c1, c2, 0.4, 0.0), WithinRel(f21, 1e-12));
    CHECK_THAT(specfun::hyp2f1(a, b, c1, 0.4), WithinRel(f21, 1e-12));
    const double f11 = boost::math::hypergeometric_1F1(a, c2, 0.7);
    CHECK_THAT(specfun::appell_psi1(a, b, c1, c2, 0.0, 0.7), WithinRel(f11, 1e-12));
    CHECK_THAT(specfun::hyp1f1(a, c2, 0.7), WithinRel(f11, 1e-12));
}

TEST_CASE("appell_psi1 against brute-force double sum", "[specfun]")
{
    const long double ref = oracle::appell_psi1_bruteforce(2.5L, 1.0L, 1.5L, 1.5L, 0.4L, 0.2L);
    CHECK_THAT(specfun::appell_psi1(2.5, 1.0, 1.5, 1.5, 0.4, 0.2), WithinRel(static_cast<double>(ref), 1e-11));

    // Parameters of the kind the kappa-mu mean uses (x close to 1).
    for (double mu : {1.0, 3.0, 8.0})
        for (double x : {0.3, 0.8, 0.95})
        {
            const double y = 0.25;
            const long double bf = oracle::appell_psi1_bruteforce(mu / 2 + 1, 1.0L, 1.5L, mu / 2, x, y, 1500);
            CHECK_THAT(specfun::appell_psi1(mu / 2 + 1, 1.0, 1.5, mu / 2, x, y), WithinRel(static_cast<double>(bf), 1e-10));
        }
}

TEST_CASE("appell_psi1 reports non-convergence and bad arguments", "[specfun]")
{
    const specfun::SeriesControl tight{1e-12, 50};
    CHECK_THROWS_AS(specfun::appell_psi1(3.0, 1.0, 1.5, 2.0, 0.999, 0.3, tight), NonConvergenceError);
    CHECK_THROWS_AS(specfun::appell_psi1(3.0, 1.0, 1.5, 2.0, 1.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(specfun::appell_psi1(3.0, 1.0, 0.0, 2.0, 0.5, 0.3), std::domain_error);
    CHECK_THROWS_AS(specfun::appell_psi1(3.0, 1.0, 1.5, -2.0, 0.5, 0.3), std::domain_error);
}

TEST_CASE("gamma_moment", "[specfun]")
{
    CHECK(specfun::gamma_moment(0, 1.0) == 1.0);
    CHECK_THAT(specfun::gamma_moment(3, 2.0), WithinRel(6.0 / 16.0, 1e-15));
    const double ref =
        oracle::integrate([](double l) { return std::pow(l, 10) * std::exp(-0.5 * l); }, 0.0,
                          std::numeric_limits<double>::infinity());
    CHECK_THAT(specfun::gamma_moment(10, 0.5), WithinRel(ref, 1e-10));
    CHECK_THAT(specfun::gamma_moment(45, 3.0), WithinRel(std::exp(std::lgamma(46.0) - 46.0 * std::log(3.0)), 1e-12));
    CHECK_THROWS_AS(specfun::gamma_moment(1, 0.0), std::domain_error);
}

TEST_CASE("log_moment_integral", "[specfun]")
{
    CHECK(specfun::log_moment_integral(3, 1.0, 0.0) == 0.0);
    const double w = 0.7, a = 2.0;
    CHECK_THAT(specfun::log_moment_integral(0, w, a),
               WithinRel(std::exp(w / a) * boost::math::expint(1, w / a) / w, 1e-12));

    for (int n : {0, 1, 2, 5, 12})
        for (double ww : {0.2, 1.3, 4.0})
            for (double aa : {1e-3, 0.5, 4.0, 1e4})
            {
                const double ref = oracle::integrate(
                    [&](double l) { return std::log1p(aa * l) * std::pow(l, n) * std::exp(-ww * l); }, 0.0,
                    std::numeric_limits<double>::infinity(), 1e-13);
                CHECK_THAT(specfun::log_moment_integral(n, ww, aa), WithinRel(ref, 1e-9));
            }

    double prev = 0.0;
    for (double aa = 0.0; aa <= 50.0; aa += 2.5)
    {
        const double v = specfun::log_moment_integral(3, 1.1, aa);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(specfun::log_moment_integral(1, 0.0, 1.0), std::domain_error);
}

TEST_CASE("ratio_moment_integral", "[specfun]")
{
    CHECK(specfun::ratio_moment_integral(2, 1.5, 0.3, 0.0) == specfun::gamma_moment(2, 1.5));
    CHECK_THAT(specfun::ratio_moment_integral(2, 1.5, 1e9, 0.7), WithinRel(specfun::gamma_moment(2, 1.5), 1e-6));

    const auto quad = [](int n, double w, double s, double b) {
        return oracle::integrate(
            [&](double l) { return (l + s) / (l + s + b) * std::pow(l, n) * std::exp(-w * l); }, 0.0,
            std::numeric_limits<double>::infinity(), 1e-13);
    };
    CHECK_THAT(specfun::ratio_moment_integral(1, 0.8, 0.2, 0.5), WithinRel(quad(1, 0.8, 0.2, 0.5), 1e-10));
    for (int n : {0, 3, 9})
        for (double s : {1e-3, 0.1, 5.0})
            for (double b : {0.05, 1.0, 40.0})
                CHECK_THAT(specfun::ratio_moment_integral(n, 0.9, s, b), WithinRel(quad(n, 0.9, s, b), 1e-9));

    // The integrand (l+s)/(l+s+b) falls as b grows, so the integral is nonincreasing in b.
    double prev = specfun::ratio_moment_integral(2, 1.0, 0.4, 0.0);
    for (double b = 0.25; b <= 20.0; b += 0.25)
    {
        const double v = specfun::ratio_moment_integral(2, 1.0, 0.4, b);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK_THROWS_AS(specfun::ratio_moment_integral(1, 1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::ratio_moment_integral(1, -1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("semicircle_log_integral limits and quadrature", "[specfun]")
{
    CHECK(specfun::semicircle_log_integral(0.0) == 0.0);
    CHECK_THAT(specfun::semicircle_log_integral(0.01), WithinRel(0.01 / std::numbers::ln2, 0.05));
    CHECK_THAT(specfun::semicircle_log_integral(1e4), WithinRel(std::log2(1e4 / std::numbers::e), 0.01));
    for (double c : {0.01, 0.5, 3.0, 100.0, 1e4})
    {
        const double ref = oracle::integrate_singular(
            [c](double l) { return std::log2(1.0 + c * l) / std::numbers::pi * std::sqrt(1.0 / l - 0.25); }, 0.0, 4.0,
            1e-13);
        CHECK_THAT(specfun::semicircle_log_integral(c), WithinRel(ref, 1e-8));
    }
    CHECK_THROWS_AS(specfun::semicircle_log_integral(-1.0), std::domain_error);
}

TEST_CASE("adaptive quadrature", "[specfun]")
{
    CHECK_THAT(specfun::integrate([](double x) { return x * x * x; }, 0.0, 2.0), WithinRel(4.0, 1e-14));
    CHECK_THAT(specfun::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0), WithinRel(2.0 / 3.0, 1e-10));
    CHECK(specfun::integrate([](double) { return 1.0; }, 1.0, 1.0) == 0.0);
    const specfun::QuadratureControl starved{1e-14, 0.0, 2};
    CHECK_THROWS_AS(specfun::integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, starved),
                    NonConvergenceError);
}

TEST_CASE("scaled bessel at large arguments", "[specfun]")
{
    // Half-integer orders have elementary closed forms.
    for (double x : {999.0, 1001.0, 2500.0, 1e5, 1e9})
    {
        const double base = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
        const double tail = std::exp(-2.0 * x);
        CHECK_THAT(specfun::bessel_i_scaled(0.5, x), WithinRel(base * (1.0 - tail), 1e-13));
        CHECK_THAT(specfun::bessel_i_scaled(1.5, x),
                   WithinRel(base * ((1.0 + tail) - (1.0 - tail) / x), 1e-13));
    }
    // Continuity where the evaluation switches from the series.
    for (double nu : {0.0, 2.0, 7.5})
    {
        const double below = specfun::bessel_i_scaled(nu, 1000.0);
        const double above = specfun::bessel_i_scaled(nu, std::nextafter(1000.0, 2000.0));
        CHECK_THAT(above, WithinRel(below, 1e-13));
    }
}
