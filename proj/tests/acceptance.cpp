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

// Acceptance suite. Each criterion prints one PASS/FAIL line; --verbose adds
// the per-point table behind the verdict. Exit status is 0 only if every
// selected criterion passes.

#include "oracles.hpp"
#include "wishfade/approx.hpp"
#include "wishfade/capacity.hpp"
#include "wishfade/eigen_form.hpp"
#include "wishfade/oc.hpp"
#include "wishfade/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstdarg>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

using namespace wishfade;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();
bool g_verbose = false;

void detail(const char *fmt, ...) __attribute__((format(printf, 1, 2)));
void detail(const char *fmt, ...)
{
    if (!g_verbose)
        return;
    va_list args;
    va_start(args, fmt);
    std::printf("  ");
    std::vprintf(fmt, args);
    std::printf("\n");
    va_end(args);
}

struct Verdict
{
    bool pass;
    std::string summary;
};

McConfig mc(std::uint64_t trials)
{
    McConfig cfg;
    cfg.trials = trials;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    return cfg;
}

double db(double x)
{
    return std::pow(10.0, x / 10.0);
}

class Stopwatch
{
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

const std::vector<double> kSnrGridDb = {0.0, 5.0, 10.0, 15.0, 20.0};

// ---------------------------------------------------------------- criterion 1

Verdict nmse_table()
{
    const double table[4][4] = {{0.4247, 0.4633, 0.4631, 0.4769},
                                {0.2182, 0.2328, 0.2362, 0.2417},
                                {0.1511, 0.1563, 0.1574, 0.1631},
                                {0.1115, 0.1198, 0.1195, 0.1205}};
    const std::pair<double, double> columns[4] = {{2.0, 3.0}, {6.0, 3.0}, {2.0, 6.0}, {6.0, 6.0}};
    const Stopwatch clock;
    double worst = 0.0;
    int bad = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
        {
            const std::size_t n2 = 2 + 2 * static_cast<std::size_t>(r);
            const auto [kappa, mu] = columns[c];
            const double v = approx::nmse_second_moment(fading::KappaMuParams::from_kappa(kappa, mu, 0.5), 2, n2,
                                                        mc(100000));
            const double err = std::abs(v - table[r][c]);
            worst = std::max(worst, err);
            bad += err > 0.03;
            detail("n2=%zu kappa=%g mu=%g nmse=%.4f reference=%.4f |err|=%.4f", n2, kappa, mu, v, table[r][c], err);
        }
    const double t = clock.seconds();
    return {bad == 0 && t <= 120.0,
            fmt("16 NMSE cells, max |err| %.4f (limit 0.03), %.0f cells out, %.1f s (limit 120 s)", worst, bad, t)};
}

// ---------------------------------------------------------------- criterion 2

Verdict mean_fidelity()
{
    const Stopwatch clock;
    double worst = 0.0;
    int bad = 0, total = 0;
    for (double kappa : {0.5, 1.0, 2.0, 4.0, 8.0})
        for (int mu = 1; mu <= 8; ++mu)
            for (double sigma2 : {0.25, 0.5, 1.0})
            {
                const auto p = fading::KappaMuParams::from_kappa(kappa, mu, sigma2);
                const double closed = approx::mean_component_kmu(p.p, sigma2, mu);
                const double quad = oracle::integrate(
                    [&](double x) { return x * fading::pdf_kmu_component(p.p, sigma2, mu, x); }, -kInf, kInf);
                const double rel = std::abs(closed - quad) / std::abs(quad);
                worst = std::max(worst, rel);
                ++total;
                if (rel > 0.01)
                {
                    ++bad;
                    detail("kappa=%g mu=%d sigma2=%g closed=%.6g quadrature=%.6g rel=%.4f", kappa, mu, sigma2, closed,
                           quad, rel);
                }
            }
    const double t = clock.seconds();
    return {bad == 0 && t <= 30.0, fmt("max rel err %.4f (limit 0.01), %.0f of %.0f points out", worst, bad, total) +
                                       fmt(", %.1f s (limit 30 s)", t)};
}

// ------------------------------------------------------- criteria 3, 4 and 5

struct CapacityConfig
{
    std::string name;
    fading::FadingModel model;
    std::size_t n_r;
    std::size_t n_t;
};

std::vector<CapacityConfig> capacity_configs()
{
    std::vector<CapacityConfig> out;
    for (std::size_t nt : {2u, 4u, 8u})
        out.push_back({"kappa-mu(4,3) 2x" + std::to_string(nt), fading::KappaMuParams::from_kappa(4.0, 3.0, 0.5), 2,
                       nt});
    for (double mu : {1.0, 2.0, 4.0})
        out.push_back({"eta-mu(0," + fmt("%g", mu) + ") 4x2", fading::EtaMuParams{0.0, mu, 1.0}, 4, 2});
    return out;
}

Verdict capacity_vs_true()
{
    const Stopwatch clock;
    std::vector<double> rhos;
    for (double s : kSnrGridDb)
        rhos.push_back(db(s));
    double worst = 0.0;
    int bad = 0, total = 0;
    for (const auto &c : capacity_configs())
    {
        const auto sweep = capacity::capacity_mc_sweep(c.model, c.n_r, c.n_t, rhos, mc(100000));
        for (std::size_t k = 0; k < rhos.size(); ++k)
        {
            const double closed = capacity::capacity_closed({c.model, c.n_r, c.n_t, rhos[k]});
            const double rel = std::abs(closed - sweep[k].mean) / sweep[k].mean;
            worst = std::max(worst, rel);
            ++total;
            bad += rel > 0.02;
            detail("%s snr=%gdB closed=%.4f mc=%.4f(se %.4f) rel=%.4f%s", c.name.c_str(), kSnrGridDb[k], closed,
                   sweep[k].mean, sweep[k].std_error, rel, rel > 0.02 ? " OUT" : "");
        }
    }
    const double t = clock.seconds();
    return {bad == 0 && t <= 300.0, fmt("max rel err %.4f (limit 0.02), %.0f of %.0f points out", worst, bad, total) +
                                        fmt(", %.1f s (limit 300 s)", t)};
}

struct SerConfig
{
    std::string name;
    oc::OcScenario scenario;
};

std::vector<SerConfig> ser_configs()
{
    std::vector<SerConfig> out;
    for (auto [kappa, mu] : {std::pair{1.0, 1.0}, {1.0, 3.0}, {5.0, 1.0}, {5.0, 3.0}, {5.0, 7.0}})
    {
        oc::OcScenario s;
        s.n_r = 2;
        s.n_i = 1;
        s.e_i = db(-20.0);
        s.interferer_model = fading::KappaMuParams::from_kappa(kappa, mu, 1.0 / (2.0 * (1.0 + kappa) * mu));
        out.push_back({"kappa-mu(" + fmt("%g", kappa) + "," + fmt("%g", mu) + ") 2/1", s});
    }
    oc::OcScenario s;
    s.n_r = 3;
    s.n_i = 4;
    s.e_i = db(-17.0);
    s.interferer_model = fading::EtaMuParams{0.3, 5.0, 1.0};
    out.push_back({"eta-mu(0.3,5) 3/4", s});
    return out;
}

std::vector<double> noise_grid()
{
    std::vector<double> out;
    for (double s : kSnrGridDb)
        out.push_back(1.0 / db(s));
    return out;
}

Verdict closed_vs_surrogate()
{
    double worst = 0.0;
    int bad = 0, total = 0;
    std::vector<double> rhos;
    for (double s : kSnrGridDb)
        rhos.push_back(db(s));
    for (const auto &c : capacity_configs())
    {
        const std::size_t n1 = capacity::surrogate_n1(c.n_r, c.n_t);
        const std::size_t n2 = capacity::surrogate_n2(c.n_r, c.n_t);
        const auto w = approx::build_wishart(c.model, n1, n2);
        std::vector<double> gains;
        for (double r : rhos)
            gains.push_back(r / static_cast<double>(c.n_t));
        const auto sweep = capacity::capacity_surrogate_mc_sweep(w, gains, mc(100000));
        for (std::size_t k = 0; k < gains.size(); ++k)
        {
            const double closed = capacity::capacity_closed(w, gains[k]);
            const double z = std::abs(closed - sweep[k].mean) / sweep[k].std_error;
            worst = std::max(worst, z);
            ++total;
            bad += z > 3.0;
            detail("capacity %s snr=%gdB closed=%.5f surrogate=%.5f z=%.2f", c.name.c_str(), kSnrGridDb[k], closed,
                   sweep[k].mean, z);
        }
    }
    const auto noise = noise_grid();
    for (const auto &c : ser_configs())
    {
        const auto sweep = oc::ser_surrogate_mc_sweep(c.scenario, noise, mc(100000));
        for (std::size_t k = 0; k < noise.size(); ++k)
        {
            auto s = c.scenario;
            s.sigma2_noise = noise[k];
            const double closed = oc::ser_closed(s).value;
            const double z = std::abs(closed - sweep[k].mean) / sweep[k].std_error;
            worst = std::max(worst, z);
            ++total;
            bad += z > 3.0;
            detail("ser %s snr=%gdB closed=%.5e surrogate=%.5e z=%.2f", c.name.c_str(), kSnrGridDb[k], closed,
                   sweep[k].mean, z);
        }
    }
    return {bad == 0, fmt("max |z| %.2f (limit 3), %.0f of %.0f points out", worst, bad, total)};
}

Verdict eta_independence()
{
    int bad = 0, total = 0;
    for (double mu : {1.0, 2.0, 4.0})
        for (double s : kSnrGridDb)
        {
            const double ref = capacity::capacity_closed({fading::EtaMuParams{0.0, mu, 1.0}, 4, 2, db(s)});
            for (double eta : {-0.5, 0.5})
            {
                ++total;
                bad += capacity::capacity_closed({fading::EtaMuParams{eta, mu, 1.0}, 4, 2, db(s)}) != ref;
            }
        }
    const auto base = ser_configs().back().scenario;
    for (double noise : noise_grid())
    {
        auto s = base;
        s.sigma2_noise = noise;
        s.interferer_model = fading::EtaMuParams{0.0, 5.0, 1.0};
        const double ref = oc::ser_closed(s).value;
        for (double eta : {-0.5, 0.5})
        {
            s.interferer_model = fading::EtaMuParams{eta, 5.0, 1.0};
            ++total;
            bad += oc::ser_closed(s).value != ref;
        }
    }
    return {bad == 0, fmt("%.0f of %.0f eta variants differ bitwise", bad, total)};
}

// ---------------------------------------------------------------- criterion 6

Verdict ser_vs_true()
{
    const Stopwatch clock;
    const auto noise = noise_grid();
    int bad = 0, total = 0;
    double worst_rel = 0.0;
    for (const auto &c : ser_configs())
    {
        const auto sweep = oc::ser_mc_sweep(c.scenario, noise, mc(100000));
        for (std::size_t k = 0; k < noise.size(); ++k)
        {
            auto s = c.scenario;
            s.sigma2_noise = noise[k];
            const double closed = oc::ser_closed(s).value;
            const double diff = std::abs(closed - sweep[k].mean);
            const double rel = diff / sweep[k].mean;
            const bool ok = rel <= 0.05 || diff <= 5e-4;
            ++total;
            bad += !ok;
            if (diff > 5e-4)
                worst_rel = std::max(worst_rel, rel);
            detail("%s snr=%gdB closed=%.5e mc=%.5e(se %.1e) rel=%.4f abs=%.1e%s", c.name.c_str(), kSnrGridDb[k],
                   closed, sweep[k].mean, sweep[k].std_error, rel, diff, ok ? "" : " OUT");
        }
    }
    const double t = clock.seconds();
    return {bad == 0 && t <= 300.0,
            fmt("%.0f of %.0f points outside 5%% rel / 5e-4 abs (worst rel %.3f where abs fails)", bad, total,
                worst_rel) +
                fmt(", %.1f s (limit 300 s)", t)};
}

// ---------------------------------------------------------------- criterion 7

Verdict density_normalization()
{
    double worst = 0.0;
    const auto p = fading::KappaMuParams::from_kappa(2.0, 3.0, 0.5);
    for (auto [n1, n2] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 4}, {3, 4}})
    {
        const auto w = approx::build_wishart_kmu(p, n1, n2);
        const capacity::EigDensityTwo d{n1, n2, w.cov.w1(), w.cov.w2()};
        std::function<double(std::vector<double> &, std::size_t)> nest = [&](std::vector<double> &l,
                                                                             std::size_t depth) -> double {
            if (depth == n1)
                return capacity::eig_density_two(d, l);
            return oracle::integrate(
                [&](double x) {
                    l[depth] = x;
                    return nest(l, depth + 1);
                },
                0.0, kInf, 1e-9);
        };
        std::vector<double> l(n1);
        const double mass = nest(l, 0);
        worst = std::max(worst, std::abs(mass - 1.0));
        detail("n1=%zu n2=%zu w1=%.6g w2=%.6g mass=%.10f", n1, n2, d.w1, d.w2, mass);
    }
    return {worst <= 1e-4, fmt("max |mass - 1| %.2e (limit 1e-4)", worst)};
}

// ---------------------------------------------------------------- criterion 8

Verdict dof_claim()
{
    const std::vector<std::pair<std::string, fading::FadingModel>> models = {
        {"gaussian", fading::RayleighParams{0.5}},
        {"kappa-mu(2,3)", fading::KappaMuParams::from_kappa(2.0, 3.0, 0.5)},
        {"eta-mu(0.3,2)", fading::EtaMuParams{0.3, 2.0, 1.0}},
    };
    double worst = 0.0;
    int bad = 0, total = 0;
    for (const auto &[name, model] : models)
        for (std::size_t n2 : {4u, 8u})
        {
            const double n = approx::fit_dof_kl(model, 2, n2, mc(100000));
            const double rel = std::abs(n - static_cast<double>(n2)) / static_cast<double>(n2);
            worst = std::max(worst, rel);
            ++total;
            bad += rel > 0.05;
            detail("%s n2=%zu fitted n=%.4f rel=%.4f%s", name.c_str(), n2, n, rel, rel > 0.05 ? " OUT" : "");
        }
    return {bad == 0, fmt("max rel dev %.4f (limit 0.05), %.0f of %.0f fits out", worst, bad, total)};
}

// ---------------------------------------------------------------- criterion 9

Verdict asymptotics()
{
    const double low = specfun::semicircle_log_integral(0.01);
    const double low_ref = 0.01 / std::numbers::ln2;
    const double high = specfun::semicircle_log_integral(1e4);
    const double high_ref = std::log2(1e4 / std::numbers::e);
    const double finite = capacity::capacity_closed_identity_cov(1.0, 8, 8, 1e3) / 8.0;
    const double limit = capacity::asymptotic_capacity_identity(1e3, 1.0);
    const double e_low = std::abs(low - low_ref) / low_ref;
    const double e_high = std::abs(high - high_ref) / high_ref;
    const double e_fin = std::abs(finite - limit) / limit;
    detail("low snr: %.6g vs %.6g rel %.4f", low, low_ref, e_low);
    detail("high snr: %.6g vs %.6g rel %.4f", high, high_ref, e_high);
    detail("N=8 per antenna at 30 dB: %.6g vs asymptote %.6g rel %.4f", finite, limit, e_fin);
    return {e_low <= 0.05 && e_high <= 0.01 && e_fin <= 0.10,
            fmt("low %.4f (0.05), high %.4f (0.01), N=8 %.4f (0.10)", e_low, e_high, e_fin)};
}

// --------------------------------------------------------------- criterion 10

struct OracleTally
{
    int total = 0;
    int bad = 0;
    double worst = 0.0;
    void check(const char *what, double value, double ref, double rel_tol, double abs_tol = 0.0)
    {
        const double err = std::abs(value - ref);
        const bool ok = err <= rel_tol * std::abs(ref) + abs_tol;
        ++total;
        bad += !ok;
        if (ref != 0.0)
            worst = std::max(worst, err / std::abs(ref) / rel_tol);
        if (!ok)
            detail("%s: %.15g vs %.15g", what, value, ref);
    }
};

Verdict specfun_oracles()
{
    OracleTally t;
    for (double x : {0.3, 1.0, 4.5, 20.0, 150.0})
    {
        t.check("ln_gamma", specfun::ln_gamma(x), std::lgamma(x), 1e-14, 1e-15);
        t.check("digamma", specfun::digamma(x), boost::math::digamma(x), 1e-13, 1e-15);
        t.check("digamma recurrence", specfun::digamma(x + 1.0), specfun::digamma(x) + 1.0 / x, 1e-10, 1e-10);
    }
    for (double nu : {0.0, 0.5, 1.5, 3.0})
        for (double x : {0.1, 2.0, 15.0, 90.0})
        {
            t.check("bessel_i", specfun::bessel_i(nu, x), boost::math::cyl_bessel_i(nu, x), 1e-12);
            t.check("bessel recurrence", specfun::bessel_i(nu, x) - specfun::bessel_i(nu + 2.0, x),
                    2.0 * (nu + 1.0) / x * specfun::bessel_i(nu + 1.0, x), 1e-10);
        }
    for (int n : {1, 2, 5})
        for (double x : {0.05, 0.9, 3.0, 30.0})
        {
            t.check("expint", specfun::expint_en(n, x), boost::math::expint(n, x), 1e-12);
            t.check("expint recurrence", specfun::expint_en(n + 1, x),
                    (std::exp(-x) - x * specfun::expint_en(n, x)) / n, 1e-10);
            const double quad = oracle::integrate([&](double u) { return std::exp(-x * u) * std::pow(u, -n); }, 1.0,
                                                  kInf, 1e-13);
            t.check("expint integral", specfun::expint_en(n, x), quad, 1e-9);
        }
    for (auto [a, b, c, x] : {std::tuple{0.5, 2.0, 1.5, -0.7}, {1.0, 1.5, 2.5, 0.4}, {2.0, 3.0, 4.0, -0.9}})
        t.check("hyp2f1", specfun::hyp2f1(a, b, c, x),
                boost::math::hypergeometric_pFq({a, b}, {c}, x), 1e-11);
    for (auto [a, c, x] : {std::tuple{1.5, 2.0, 3.0}, {0.5, 1.5, -4.0}, {3.0, 1.0, 10.0}})
        t.check("hyp1f1", specfun::hyp1f1(a, c, x), boost::math::hypergeometric_1F1(a, c, x), 1e-11);
    for (auto [a, b, c1, c2, x, y] :
         {std::tuple{1.0, 0.5, 1.5, 2.0, 0.3, 1.2}, {2.5, 1.0, 2.0, 1.5, 0.4, 3.0}, {1.5, 2.0, 3.0, 2.5, 0.6, -2.0}})
    {
        t.check("appell_psi1", specfun::appell_psi1(a, b, c1, c2, x, y),
                static_cast<double>(oracle::appell_psi1_bruteforce(a, b, c1, c2, x, y)), 1e-11);
        // y = 0 reduces to 2F1.
        t.check("appell_psi1 reduction", specfun::appell_psi1(a, b, c1, c2, x, 0.0), specfun::hyp2f1(a, b, c1, x),
                1e-13);
    }
    for (int n : {0, 3, 9})
        for (double w : {0.4, 2.0})
        {
            t.check("gamma_moment", specfun::gamma_moment(n, w),
                    oracle::integrate([&](double l) { return std::pow(l, n) * std::exp(-w * l); }, 0.0, kInf), 1e-10);
            for (double a : {0.1, 10.0, 1e4})
                t.check("log_moment_integral", specfun::log_moment_integral(n, w, a),
                        oracle::integrate(
                            [&](double l) { return std::log1p(a * l) * std::pow(l, n) * std::exp(-w * l); }, 0.0,
                            kInf),
                        1e-9);
            for (auto [s, b] : {std::pair{0.01, 0.5}, {1.0, 3.0}})
                t.check("ratio_moment_integral", specfun::ratio_moment_integral(n, w, s, b),
                        oracle::integrate(
                            [&](double l) { return (l + s) / (l + s + b) * std::pow(l, n) * std::exp(-w * l); },
                            0.0, kInf),
                        1e-9);
        }
    for (double c : {0.01, 1.0, 100.0})
        t.check("semicircle_log_integral", specfun::semicircle_log_integral(c),
                oracle::integrate_singular(
                    [&](double l) { return std::log2(1.0 + c * l) * std::sqrt(1.0 / l - 0.25) / std::numbers::pi; },
                    0.0, 4.0),
                1e-9);
    t.check("integrate", specfun::integrate([](double x) { return std::sin(x) * std::exp(-x); }, 0.0, 20.0),
            0.5 * (1.0 - std::exp(-20.0) * (std::sin(20.0) + std::cos(20.0))), 1e-10);
    return {t.bad == 0, fmt("%.0f of %.0f oracle comparisons out (worst error %.2f of tolerance)", t.bad, t.total,
                            t.worst)};
}

struct Criterion
{
    const char *title;
    std::function<Verdict()> run;
};

const std::vector<Criterion> &criteria()
{
    static const std::vector<Criterion> list = {
        {"NMSE table reproduction", nmse_table},
        {"kappa-mu mean approximation fidelity", mean_fidelity},
        {"capacity closed form vs true-channel MC", capacity_vs_true},
        {"closed forms vs surrogate MC", closed_vs_surrogate},
        {"eta independence", eta_independence},
        {"SER closed form vs true-channel MC", ser_vs_true},
        {"eigenvalue density normalization", density_normalization},
        {"K-L degree-of-freedom claim", dof_claim},
        {"asymptotic capacity", asymptotics},
        {"special-function oracle suite", specfun_oracles},
    };
    return list;
}

int usage()
{
    std::fprintf(stderr, "usage: wishfade_acceptance [--criterion N]... [--verbose]\n");
    return 2;
}

} // namespace

int main(int argc, char **argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        if (std::strcmp(argv[i], "--verbose") == 0)
            g_verbose = true;
        else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
        {
            const int n = std::atoi(argv[++i]);
            if (n < 1 || n > static_cast<int>(criteria().size()))
                return usage();
            selected.push_back(n);
        }
        else
            return usage();
    }
    if (selected.empty())
        for (int n = 1; n <= static_cast<int>(criteria().size()); ++n)
            selected.push_back(n);

    bool all = true;
    for (int n : selected)
    {
        const auto &c = criteria()[static_cast<std::size_t>(n - 1)];
        Verdict v{false, ""};
        try
        {
            v = c.run();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("error: ") + e.what()};
        }
        std::printf("criterion %2d %s  %s: %s\n", n, v.pass ? "PASS" : "FAIL", c.title, v.summary.c_str());
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
