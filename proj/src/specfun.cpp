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

#include "wishfade/specfun.hpp"
#include "wishfade/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace wishfade::specfun
{

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double c)
{
    return c <= 0.0 && c == std::floor(c);
}

// Sum of the Gauss series sum_k (a)_k (b)_k / (c)_k x^k / k!, 0 <= |x| < 1.
double gauss_series(double a, double b, double c, double x, const SeriesControl &ctl)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < ctl.max_terms; ++k)
    {
        const double kd = static_cast<double>(k);
        term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
        sum += term;
        if (term == 0.0)
            return sum;
        // The term ratio tends to x; bound the remaining terms by whichever of
        // the next ratio and its limit is larger.
        const double next = std::abs((a + kd + 1.0) * (b + kd + 1.0) / ((c + kd + 1.0) * (kd + 2.0)) * x);
        const double rb = std::max(next, std::abs(x));
        if (rb < 1.0 && std::abs(term) * rb / (1.0 - rb) <= ctl.rel_tol * std::abs(sum))
            return sum;
        if (!std::isfinite(sum))
            throw NonConvergenceError("Gauss series overflowed");
    }
    throw NonConvergenceError("Gauss series did not converge within " + std::to_string(ctl.max_terms) + " terms");
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment
{
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Segment &other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)> &f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j)
    {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1)
            gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

void SeriesControl::validate() const
{
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("SeriesControl: rel_tol must be positive");
    if (max_terms < 1)
        throw std::invalid_argument("SeriesControl: max_terms must be at least 1");
}

double ln_gamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("ln_gamma: x must be positive");
    return std::lgamma(x);
}

double digamma(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("digamma: x must be positive");
    double result = 0.0;
    while (x < 10.0)
    {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double tail =
        inv2 * (1.0 / 12 -
                inv2 * (1.0 / 120 -
                        inv2 * (1.0 / 252 -
                                inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
    return result + std::log(x) - 0.5 * inv - tail;
}

double bessel_i_scaled(double order, double x)
{
    if (order < -0.5)
        throw std::domain_error("bessel_i: order must be >= -1/2");
    if (x < 0.0 || std::isnan(x))
        throw std::domain_error("bessel_i: x must be nonnegative");
    if (x == 0.0)
    {
        if (order == 0.0)
            return 1.0;
        return order > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }

    // Large arguments: Hankel asymptotic expansion, whose terms shrink until
    // k ~ 2x, far beyond where double precision is reached here.
    if (x > 1000.0 && x > 10.0 * order * order)
    {
        const double mu4 = 4.0 * order * order;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 60; ++k)
        {
            const double odd = 2.0 * k - 1.0;
            term *= -(mu4 - odd * odd) / (8.0 * k * x);
            sum += term;
            if (std::abs(term) < 0.25 * kEps * std::abs(sum))
                break;
        }
        return sum / std::sqrt(2.0 * std::numbers::pi * x);
    }

    // Ascending series, every term positive. Terms are kept relative to
    // exp(log_scale) so nothing overflows for x up to several hundred.
    const double half = 0.5 * x;
    const double quarter_sq = half * half;
    double log_scale = order * std::log(half) - std::lgamma(order + 1.0) - x;
    double term = 1.0;
    double sum = 1.0;
    constexpr double kRescale = 1e250;
    for (int k = 0; k < 100000; ++k)
    {
        const double kd = static_cast<double>(k);
        term *= quarter_sq / ((kd + 1.0) * (kd + 1.0 + order));
        sum += term;
        if (sum > kRescale)
        {
            sum /= kRescale;
            term /= kRescale;
            log_scale += std::log(kRescale);
        }
        if (kd + 1.0 > half && term < 0.25 * kEps * sum)
            return std::exp(log_scale + std::log(sum));
    }
    throw NonConvergenceError("bessel_i: series did not converge");
}

double bessel_i(double order, double x)
{
    const double scaled = bessel_i_scaled(order, x);
    if (std::isinf(scaled))
        return scaled;
    return scaled * std::exp(x);
}

double expint_en_scaled(int n, double x)
{
    if (n < 1)
        throw std::domain_error("expint_en: n must be >= 1");
    if (!(x > 0.0))
        throw std::domain_error("expint_en: x must be positive");

    constexpr double kEuler = 0.577215664901532860606512090082402431;
    constexpr int kMaxIter = 10000;
    const int nm1 = n - 1;

    if (x > 1.0)
    {
        // Modified Lentz evaluation of the continued fraction for exp(x) E_n(x).
        constexpr double kTiny = 1e-300;
        double b = x + n;
        double c = 1.0 / kTiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i <= kMaxIter; ++i)
        {
            const double a = -static_cast<double>(i) * (nm1 + i);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < kEps)
                return h;
        }
        throw NonConvergenceError("expint_en: continued fraction did not converge");
    }

    double ans = nm1 != 0 ? 1.0 / nm1 : -std::log(x) - kEuler;
    double fact = 1.0;
    for (int i = 1; i <= kMaxIter; ++i)
    {
        fact *= -x / i;
        double del;
        if (i != nm1)
        {
            del = -fact / (i - nm1);
        }
        else
        {
            double psi = -kEuler;
            for (int ii = 1; ii <= nm1; ++ii)
                psi += 1.0 / ii;
            del = fact * (-std::log(x) + psi);
        }
        ans += del;
        if (std::abs(del) < std::abs(ans) * kEps)
            return ans * std::exp(x);
    }
    throw NonConvergenceError("expint_en: series did not converge");
}

double expint_en(int n, double x)
{
    const double scaled = expint_en_scaled(n, x);
    return scaled * std::exp(-x);
}

double hyp2f1(double a, double b, double c, double x, const SeriesControl &ctl)
{
    ctl.validate();
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c must not be a nonpositive integer");
    if (!(std::abs(x) < 1.0))
        throw std::domain_error("hyp2f1: series requires |x| < 1");
    return gauss_series(a, b, c, x, ctl);
}

double hyp1f1(double a, double c, double x, const SeriesControl &ctl)
{
    ctl.validate();
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp1f1: c must not be a nonpositive integer");
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < ctl.max_terms; ++k)
    {
        const double kd = static_cast<double>(k);
        term *= (a + kd) / ((c + kd) * (kd + 1.0)) * x;
        sum += term;
        if (term == 0.0)
            return sum;
        const double next = std::abs((a + kd + 1.0) / ((c + kd + 1.0) * (kd + 2.0)) * x);
        if (kd > std::abs(a) + std::abs(x) && next < 1.0 &&
            std::abs(term) * next / (1.0 - next) <= ctl.rel_tol * std::abs(sum))
            return sum;
    }
    throw NonConvergenceError("hyp1f1: series did not converge");
}

double appell_psi1(double a, double b, double c1, double c2, double x, double y, const SeriesControl &ctl)
{
    ctl.validate();
    if (!(x >= 0.0 && x < 1.0))
        throw std::domain_error("appell_psi1: requires 0 <= x < 1");
    if (is_nonpositive_integer(c1) || is_nonpositive_integer(c2))
        throw std::domain_error("appell_psi1: c1 and c2 must not be nonpositive integers");
    if (std::isnan(y))
        throw std::domain_error("appell_psi1: y is NaN");

    // Outer sum over n of (a)_n / (c2)_n y^n / n! * 2F1(a + n, b; c1; x).
    double total = 0.0;
    double coeff = 1.0;
    double prev_term = 0.0;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (int n = 0; n < ctl.max_terms; ++n)
    {
        const double nd = static_cast<double>(n);
        const double term = coeff * gauss_series(a + nd, b, c1, x, ctl);
        total += term;
        if (!std::isfinite(total))
            throw NonConvergenceError("appell_psi1: partial sum overflowed");

        coeff *= (a + nd) / (c2 + nd) * y / (nd + 1.0);
        if (coeff == 0.0)
            return total;

        if (n > 0 && prev_term != 0.0)
        {
            const double ratio = std::abs(term / prev_term);
            if (ratio < 1.0 && ratio <= prev_ratio &&
                std::abs(term) * ratio / (1.0 - ratio) <= ctl.rel_tol * std::abs(total))
                return total;
            prev_ratio = ratio;
        }
        prev_term = term;
    }
    throw NonConvergenceError("appell_psi1: outer series did not converge within " +
                              std::to_string(ctl.max_terms) + " terms");
}

double gamma_moment(int n, double w)
{
    if (n < 0)
        throw std::domain_error("gamma_moment: n must be >= 0");
    if (!(w > 0.0))
        throw std::domain_error("gamma_moment: w must be positive");
    if (n <= 30)
    {
        double value = 1.0 / w;
        for (int i = 1; i <= n; ++i)
            value *= i / w;
        return value;
    }
    return std::exp(log_gamma_moment(n, w));
}

double log_gamma_moment(int n, double w)
{
    if (n < 0)
        throw std::domain_error("log_gamma_moment: n must be >= 0");
    if (!(w > 0.0))
        throw std::domain_error("log_gamma_moment: w must be positive");
    return std::lgamma(n + 1.0) - (n + 1.0) * std::log(w);
}

double log_moment_integral(int n, double w, double a)
{
    if (n < 0)
        throw std::domain_error("log_moment_integral: n must be >= 0");
    if (!(w > 0.0))
        throw std::domain_error("log_moment_integral: w must be positive");
    if (!(a >= 0.0))
        throw std::domain_error("log_moment_integral: a must be nonnegative");
    if (a == 0.0)
        return 0.0;
    const double z = w / a;
    if (!(z > 0.0))
        throw std::domain_error("log_moment_integral: w/a underflows");
    double sum = 0.0;
    for (int k = 1; k <= n + 1; ++k)
        sum += expint_en_scaled(k, z);
    return gamma_moment(n, w) * sum;
}

double ratio_moment_integral(int n, double w, double s, double b)
{
    if (n < 0)
        throw std::domain_error("ratio_moment_integral: n must be >= 0");
    if (!(w > 0.0))
        throw std::domain_error("ratio_moment_integral: w must be positive");
    if (!(s > 0.0))
        throw std::domain_error("ratio_moment_integral: s must be positive");
    if (!(b >= 0.0))
        throw std::domain_error("ratio_moment_integral: b must be nonnegative");
    const double base = gamma_moment(n, w);
    if (b == 0.0)
        return base;
    return base * (1.0 - b * w * expint_en_scaled(n + 1, (s + b) * w));
}

double semicircle_log_integral(double c)
{
    if (!(c >= 0.0))
        throw std::domain_error("semicircle_log_integral: c must be nonnegative");
    if (c == 0.0)
        return 0.0;
    // lambda = 4 sin^2(theta) removes the 1/sqrt(lambda) endpoint singularity.
    const auto integrand = [c](double theta) {
        const double s = std::sin(theta);
        const double co = std::cos(theta);
        return 4.0 / std::numbers::pi * co * co * std::log1p(4.0 * c * s * s) / std::numbers::ln2;
    };
    return integrate(integrand, 0.0, 0.5 * std::numbers::pi, {1e-12, 0.0, 4000});
}

double integrate(const std::function<double(double)> &f, double lo, double hi, const QuadratureControl &ctl)
{
    if (!(hi >= lo))
        throw std::invalid_argument("integrate: requires lo <= hi");
    if (hi == lo)
        return 0.0;

    std::priority_queue<Segment> heap;
    Segment first = gk15(f, lo, hi);
    double total = first.value;
    double error = first.error;
    heap.push(first);
    int intervals = 1;
    while (error > std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total)))
    {
        if (intervals >= ctl.max_intervals)
            throw NonConvergenceError("integrate: interval budget exhausted");
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Segment left = gk15(f, worst.lo, mid);
        const Segment right = gk15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
        // Guard against the running error drifting below zero through rounding.
        if (error < 0.0)
            error = 0.0;
    }
    // Resum to shed accumulated rounding from the running updates.
    double resum = 0.0;
    while (!heap.empty())
    {
        resum += heap.top().value;
        heap.pop();
    }
    return resum;
}

} // namespace wishfade::specfun
