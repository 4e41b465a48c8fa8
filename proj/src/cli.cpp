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

#include "wishfade/cli.hpp"
#include "wishfade/approx.hpp"
#include "wishfade/capacity.hpp"
#include "wishfade/errors.hpp"
#include "wishfade/fading.hpp"
#include "wishfade/montecarlo.hpp"
#include "wishfade/oc.hpp"
#include "wishfade/specfun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

namespace wishfade::cli
{

namespace
{

using Value = std::variant<std::string, double, long long, bool>;

// One output record: ordered (name, value) pairs.
class Row
{
public:
    Row &add(std::string key, Value value)
    {
        fields_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    const std::vector<std::pair<std::string, Value>> &fields() const { return fields_; }

private:
    std::vector<std::pair<std::string, Value>> fields_;
};

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Value &v)
{
    struct Visitor
    {
        std::string operator()(const std::string &s) const
        {
            if (s.find_first_of(",\"\n") == std::string::npos)
                return s;
            std::string quoted = "\"";
            for (char c : s)
            {
                if (c == '"')
                    quoted += '"';
                quoted += c;
            }
            return quoted + "\"";
        }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, v);
}

void write_csv(std::ostream &os, const std::vector<Row> &rows)
{
    if (rows.empty())
        return;
    const auto &head = rows.front().fields();
    for (std::size_t k = 0; k < head.size(); ++k)
        os << (k ? "," : "") << head[k].first;
    os << '\n';
    for (const auto &row : rows)
    {
        const auto &f = row.fields();
        for (std::size_t k = 0; k < f.size(); ++k)
            os << (k ? "," : "") << csv_cell(f[k].second);
        os << '\n';
    }
}

void write_json(std::ostream &os, const std::vector<Row> &rows)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &row : rows)
    {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto &[key, value] : row.fields())
            std::visit([&obj, &key](const auto &v) { obj[key] = v; }, value);
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

struct CommonOptions
{
    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t trials = 100000;
    bool timing = false;

    McConfig mc() const { return {trials, seed, threads}; }
};

struct FadingOptions
{
    std::string family = "kmu";
    double kappa = 2.0;
    double mu = 3.0;
    double sigma2 = 0.5;
    double inphase = 0.5;
    double eta = 0.0;
    double omega = 1.0;
    double m = 1.0;
    double mean_re = 1.0;
    double mean_im = 0.0;

    fading::FadingModel build() const
    {
        fading::FadingModel model;
        if (family == "kmu")
            model = fading::KappaMuParams::from_kappa(kappa, mu, sigma2, inphase);
        else if (family == "eta-mu")
            model = fading::EtaMuParams{eta, mu, omega};
        else if (family == "rician")
            model = fading::RicianParams{{mean_re, mean_im}, sigma2};
        else if (family == "nakagami")
            model = fading::NakagamiParams{m, omega};
        else
            model = fading::RayleighParams{sigma2};
        fading::validate(model);
        return model;
    }

    void echo(Row &row) const
    {
        row.add("fading", family);
        if (family == "kmu")
            row.add("kappa", kappa).add("mu", mu).add("sigma2", sigma2).add("inphase_fraction", inphase);
        else if (family == "eta-mu")
            row.add("eta", eta).add("mu", mu).add("omega", omega);
        else if (family == "rician")
            row.add("mean_re", mean_re).add("mean_im", mean_im).add("sigma2", sigma2);
        else if (family == "nakagami")
            row.add("m", m).add("omega", omega);
        else
            row.add("sigma2", sigma2);
    }
};

void add_common(CLI::App *app, CommonOptions &c, bool monte_carlo)
{
    app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", c.out_path, "Write results to this file instead of stdout");
    app->add_flag("--timing", c.timing, "Append a wall_time_s column (breaks byte-identical reruns)");
    if (monte_carlo)
    {
        app->add_option("--seed", c.seed, "Random seed")->capture_default_str();
        app->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")
            ->check(CLI::PositiveNumber);
        app->add_option("--trials", c.trials, "Monte-Carlo trials")->capture_default_str()->check(CLI::PositiveNumber);
    }
}

void add_fading(CLI::App *app, FadingOptions &f)
{
    app->add_option("--fading", f.family, "Entry distribution")
        ->check(CLI::IsMember({"kmu", "eta-mu", "rician", "nakagami", "rayleigh"}))
        ->capture_default_str();
    app->add_option("--kappa", f.kappa, "kappa-mu: LOS to scatter power ratio")->capture_default_str();
    app->add_option("--mu", f.mu, "kappa-mu / eta-mu: cluster count")->capture_default_str();
    app->add_option("--sigma2", f.sigma2, "Per-component scatter variance (kmu, rician, rayleigh)")
        ->capture_default_str();
    app->add_option("--los-inphase", f.inphase, "kappa-mu: in-phase share of LOS power")->capture_default_str();
    app->add_option("--eta", f.eta, "eta-mu: power imbalance")->capture_default_str();
    app->add_option("--omega", f.omega, "eta-mu / nakagami: power")->capture_default_str();
    app->add_option("--m", f.m, "nakagami: shape")->capture_default_str();
    app->add_option("--mean-re", f.mean_re, "rician: real part of entry mean")->capture_default_str();
    app->add_option("--mean-im", f.mean_im, "rician: imaginary part of entry mean")->capture_default_str();
}

struct Check
{
    std::string name;
    double value;
    double reference;
    double tolerance;
    bool pass;
};

std::vector<Check> run_validation(const CommonOptions &common)
{
    std::vector<Check> checks;
    const auto add = [&checks](std::string name, double value, double reference, double tol, bool pass) {
        checks.push_back({std::move(name), value, reference, tol, pass});
    };

    // Special-function identities.
    {
        double worst = 0.0;
        for (double x : {0.3, 1.0, 2.5, 7.0, 40.0})
            worst = std::max(worst, std::abs(specfun::digamma(x + 1.0) - specfun::digamma(x) - 1.0 / x));
        add("digamma_recurrence", worst, 0.0, 1e-10, worst <= 1e-10);
    }
    {
        double worst = 0.0;
        for (int n : {1, 2, 5})
            for (double x : {0.2, 1.0, 3.0, 20.0})
            {
                const double r = n * specfun::expint_en(n + 1, x) - std::exp(-x) + x * specfun::expint_en(n, x);
                worst = std::max(worst, std::abs(r) / std::exp(-x));
            }
        add("expint_recurrence", worst, 0.0, 1e-10, worst <= 1e-10);
    }
    {
        const double lhs = specfun::appell_psi1(2.5, 1.0, 1.5, 1.5, 0.4, 0.0);
        const double rhs = specfun::hyp2f1(2.5, 1.0, 1.5, 0.4);
        const double rel = std::abs(lhs / rhs - 1.0);
        add("appell_psi1_reduction", rel, 0.0, 1e-12, rel <= 1e-12);
    }

    // Eigenvalue density normalisation for a kappa-mu surrogate.
    {
        const auto params = fading::KappaMuParams::from_kappa(2.0, 3.0, 0.5);
        const auto approx = approx::build_wishart_kmu(params, 2, 3);
        const capacity::EigDensityTwo d{2, 3, approx.cov.w1(), approx.cov.w2()};
        const double upper = 60.0 / std::min(d.w1, d.w2);
        const specfun::QuadratureControl ctl{1e-9, 1e-13, 4000};
        const double total = specfun::integrate(
            [&](double l1) {
                return specfun::integrate([&](double l2) { return capacity::eig_density_two(d, {l1, l2}); }, 0.0,
                                          upper, ctl);
            },
            0.0, upper, ctl);
        add("eigen_density_normalization", total, 1.0, 1e-4, std::abs(total - 1.0) <= 1e-4);
    }

    // First-moment match of the eta-mu surrogate (exact by construction).
    {
        const fading::FadingModel model = fading::EtaMuParams{0.3, 2.0, 1.0};
        const auto approx = approx::build_wishart(model, 2, 4);
        McConfig cfg = common.mc();
        auto acc = run_trials(cfg, 0x51, 1, [&](RandomStream &rng, double *out) {
            out[0] = linalg::gram(fading::sample_channel_matrix(model, 2, 4, rng))(0, 0).real();
        });
        const double ref = 4.0 * approx.cov.diag();
        const double z = std::abs(acc[0].mean() - ref) / acc[0].std_error();
        add("first_moment_eta_mu_z", z, 0.0, 3.0, z <= 3.0);
    }

    // Closed forms against the surrogate they describe.
    {
        const auto params = fading::KappaMuParams::from_kappa(4.0, 3.0, 0.5);
        const auto approx = approx::build_wishart_kmu(params, 2, 4);
        const double gain = 10.0 / 4.0;
        const double closed = capacity::capacity_closed(approx, gain);
        const auto mc = capacity::capacity_surrogate_mc_sweep(approx, {gain}, common.mc()).front();
        const double z = std::abs(closed - mc.mean) / mc.std_error;
        add("capacity_closed_vs_surrogate_z", z, 0.0, 3.0, z <= 3.0);
    }
    {
        oc::OcScenario s;
        s.n_r = 2;
        s.n_i = 3;
        s.e_i = db_to_linear(-10.0);
        s.sigma2_noise = db_to_linear(-10.0);
        s.interferer_model = fading::KappaMuParams::from_kappa(1.0, 2.0, 0.25);
        const double closed = oc::ser_closed(s).value;
        const auto mc = oc::ser_surrogate_mc_sweep(s, {s.sigma2_noise}, common.mc()).front();
        const double z = std::abs(closed - mc.mean) / mc.std_error;
        add("ser_closed_vs_surrogate_z", z, 0.0, 3.0, z <= 3.0);
    }
    return checks;
}

template <class Fn>
double timed(Fn &&fn)
{
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

std::vector<double> parse_grid(const std::string &text)
{
    const auto to_double = [&text](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(s, &used);
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("invalid grid '" + text + "'");
        }
        if (used != s.size() || !std::isfinite(v))
            throw std::invalid_argument("invalid grid '" + text + "'");
        return v;
    };

    std::vector<double> out;
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw std::invalid_argument("grid '" + text + "' must look like start:stop:step");
        const double a = to_double(parts[0]);
        const double b = to_double(parts[1]);
        const double step = to_double(parts[2]);
        if (!(step > 0.0) || b < a)
            throw std::invalid_argument("grid '" + text + "' needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k)
            out.push_back(a + static_cast<double>(k) * step);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(to_double(item));
    if (out.empty())
        throw std::invalid_argument("empty grid");
    return out;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Wishart surrogates for generalized-fading MIMO channels"};
    app.require_subcommand(1);

    CommonOptions common;
    FadingOptions fade;
    std::size_t nr = 2;
    std::size_t nt = 4;
    std::size_t ni = 1;
    std::size_t n1 = 2;
    std::size_t n2 = 4;
    std::string snr_db = "10";
    double ei_db = -10.0;
    int qam = 4;
    std::string pe_rule = "exact";
    std::string route = "solve";

    auto *sigma = app.add_subcommand("sigma", "Print the surrogate covariance and its eigenstructure");
    auto *cap = app.add_subcommand("capacity", "Closed-form ergodic capacity");
    auto *cap_mc = app.add_subcommand("capacity-mc", "Monte-Carlo ergodic capacity of the true channel");
    auto *asym = app.add_subcommand("asymptotic", "Large-array per-antenna capacity");
    auto *ser = app.add_subcommand("ser", "Closed-form optimum-combining SER");
    auto *ser_mc = app.add_subcommand("ser-mc", "Monte-Carlo optimum-combining SER");
    auto *nmse = app.add_subcommand("nmse", "Second-moment NMSE of the surrogate");
    auto *fit = app.add_subcommand("fit-dof", "K-L degree-of-freedom fit");
    auto *validate = app.add_subcommand("validate", "Self-checks against independent oracles");

    for (auto *sub : {sigma, cap, asym, ser})
        add_common(sub, common, false);
    for (auto *sub : {cap_mc, ser_mc, nmse, fit, validate})
        add_common(sub, common, true);
    for (auto *sub : {sigma, cap, cap_mc, asym, ser, ser_mc, nmse, fit})
        add_fading(sub, fade);
    for (auto *sub : {cap, cap_mc})
    {
        sub->add_option("--nr", nr, "Receive antennas")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--nt", nt, "Transmit antennas")->capture_default_str()->check(CLI::PositiveNumber);
    }
    for (auto *sub : {cap, cap_mc, asym, ser, ser_mc})
        sub->add_option("--snr-db", snr_db, "SNR in dB: value, list a,b,c or grid start:stop:step")
            ->capture_default_str();
    for (auto *sub : {ser, ser_mc})
    {
        sub->add_option("--nr", nr, "Receive antennas")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--ni", ni, "Interferers (0 allowed)")->capture_default_str();
        sub->add_option("--ei-db", ei_db, "Mean interferer power in dB")->capture_default_str();
        sub->add_option("--qam", qam, "Square QAM order")->capture_default_str();
    }
    ser_mc->add_option("--pe", pe_rule, "Error-probability rule")
        ->check(CLI::IsMember({"exact", "exponential"}))
        ->capture_default_str();
    ser_mc->add_option("--route", route, "SINR evaluation")
        ->check(CLI::IsMember({"solve", "eigen"}))
        ->capture_default_str();
    for (auto *sub : {sigma, nmse, fit})
    {
        sub->add_option("--n1", n1, "Rows of H")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--n2", n2, "Columns of H (degrees of freedom)")->capture_default_str()->check(CLI::PositiveNumber);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    std::vector<Row> rows;
    try
    {
        const auto mc_columns = [&common](Row &row, const McEstimate &e) {
            row.add("value", e.mean)
                .add("std_error", e.std_error)
                .add("trials", static_cast<long long>(e.trials))
                .add("seed", std::to_string(common.seed));
        };

        double wall = 0.0;
        if (sigma->parsed())
        {
            wall = timed([&] {
                const auto model = fade.build();
                const auto a = approx::build_wishart(model, n1, n2);
                Row row;
                row.add("command", std::string("sigma"));
                fade.echo(row);
                row.add("n1", static_cast<long long>(n1))
                    .add("n2", static_cast<long long>(n2))
                    .add("dof", static_cast<long long>(a.dof))
                    .add("diag", a.cov.diag())
                    .add("offdiag", a.cov.offdiag())
                    .add("eig_repeated", a.cov.eig_repeated())
                    .add("eig_single", a.cov.eig_single())
                    .add("w1", a.cov.w1())
                    .add("w2", a.cov.w2());
                rows.push_back(std::move(row));
            });
        }
        else if (cap->parsed() || cap_mc->parsed())
        {
            const bool closed = cap->parsed();
            wall = timed([&] {
                const auto model = fade.build();
                const auto grid = parse_grid(snr_db);
                std::vector<double> rhos;
                for (double db : grid)
                    rhos.push_back(db_to_linear(db));
                std::vector<McEstimate> mc;
                if (!closed)
                    mc = capacity::capacity_mc_sweep(model, nr, nt, rhos, common.mc());
                for (std::size_t k = 0; k < grid.size(); ++k)
                {
                    Row row;
                    row.add("command", std::string(closed ? "capacity" : "capacity-mc"));
                    fade.echo(row);
                    row.add("nr", static_cast<long long>(nr))
                        .add("nt", static_cast<long long>(nt))
                        .add("snr_db", grid[k])
                        .add("metric", std::string("capacity_bits_per_hz"));
                    if (closed)
                        row.add("value", capacity::capacity_closed(capacity::CapacityScenario{model, nr, nt, rhos[k]}));
                    else
                        mc_columns(row, mc[k]);
                    rows.push_back(std::move(row));
                }
            });
        }
        else if (asym->parsed())
        {
            wall = timed([&] {
                const auto model = fade.build();
                const bool kmu = std::holds_alternative<fading::KappaMuParams>(model);
                const auto grid = parse_grid(snr_db);
                for (double db : grid)
                {
                    const double rho = db_to_linear(db);
                    Row row;
                    row.add("command", std::string("asymptotic"));
                    fade.echo(row);
                    row.add("snr_db", db);
                    if (kmu)
                    {
                        const auto a = approx::build_wishart(model, 2, 2);
                        row.add("metric", std::string("per_antenna_capacity_high_snr"))
                            .add("value", capacity::asymptotic_capacity_kmu_high_snr(rho, a.cov));
                    }
                    else
                    {
                        row.add("metric", std::string("per_antenna_capacity"))
                            .add("value", capacity::asymptotic_capacity_identity(rho, fading::mean_power(model)));
                    }
                    rows.push_back(std::move(row));
                }
            });
        }
        else if (ser->parsed() || ser_mc->parsed())
        {
            const bool closed = ser->parsed();
            wall = timed([&] {
                oc::OcScenario s;
                s.n_r = nr;
                s.n_i = ni;
                s.e_i = db_to_linear(ei_db);
                s.qam_order = qam;
                s.interferer_model = fade.build();
                const auto grid = parse_grid(snr_db);
                std::vector<double> noise;
                for (double db : grid)
                    noise.push_back(1.0 / db_to_linear(db));
                std::vector<McEstimate> mc;
                if (!closed)
                    mc = oc::ser_mc_sweep(s, noise, common.mc(),
                                          pe_rule == "exact" ? oc::PeRule::exact : oc::PeRule::exponential,
                                          route == "solve" ? oc::SinrRoute::direct_solve
                                                           : oc::SinrRoute::eigen_exponential);
                for (std::size_t k = 0; k < grid.size(); ++k)
                {
                    Row row;
                    row.add("command", std::string(closed ? "ser" : "ser-mc"));
                    fade.echo(row);
                    row.add("nr", static_cast<long long>(nr))
                        .add("ni", static_cast<long long>(ni))
                        .add("ei_db", ei_db)
                        .add("qam", static_cast<long long>(qam))
                        .add("snr_db", grid[k])
                        .add("metric", std::string("ser"));
                    if (closed)
                    {
                        s.sigma2_noise = noise[k];
                        const auto r = oc::ser_closed(s);
                        row.add("value", r.value).add("clamped", r.clamped);
                    }
                    else
                    {
                        mc_columns(row, mc[k]);
                        row.add("pe_rule", pe_rule).add("route", route);
                    }
                    rows.push_back(std::move(row));
                }
            });
        }
        else if (nmse->parsed() || fit->parsed())
        {
            const bool is_nmse = nmse->parsed();
            wall = timed([&] {
                const auto model = fade.build();
                Row row;
                row.add("command", std::string(is_nmse ? "nmse" : "fit-dof"));
                fade.echo(row);
                row.add("n1", static_cast<long long>(n1)).add("n2", static_cast<long long>(n2));
                if (is_nmse)
                    row.add("metric", std::string("nmse"))
                        .add("value", approx::nmse_second_moment(model, n1, n2, common.mc()));
                else
                    row.add("metric", std::string("fitted_dof"))
                        .add("value", approx::fit_dof_kl(model, n1, n2, common.mc()));
                row.add("trials", static_cast<long long>(common.trials)).add("seed", std::to_string(common.seed));
                rows.push_back(std::move(row));
            });
        }
        else if (validate->parsed())
        {
            std::vector<Check> checks;
            wall = timed([&] { checks = run_validation(common); });
            for (const auto &c : checks)
            {
                Row row;
                row.add("command", std::string("validate"))
                    .add("check", c.name)
                    .add("value", c.value)
                    .add("reference", c.reference)
                    .add("tolerance", c.tolerance)
                    .add("pass", c.pass);
                rows.push_back(std::move(row));
            }
        }

        if (common.timing)
            for (auto &row : rows)
                row.add("wall_time_s", wall);

        std::ofstream file;
        std::ostream *sink = &out;
        if (!common.out_path.empty())
        {
            file.open(common.out_path);
            if (!file)
                throw std::invalid_argument("cannot open output file " + common.out_path);
            sink = &file;
        }
        if (common.format == "json")
            write_json(*sink, rows);
        else
            write_csv(*sink, rows);

        if (validate->parsed())
            for (const auto &row : rows)
                for (const auto &[key, value] : row.fields())
                    if (key == "pass" && !std::get<bool>(value))
                        return kExitNumerical;
        return kExitOk;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::domain_error &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    catch (const std::exception &e)
    {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace wishfade::cli
