#include "reldiff/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reldiff/density.hpp"
#include "reldiff/io.hpp"
#include "reldiff/martingale.hpp"
#include "reldiff/montecarlo.hpp"
#include "reldiff/pricing.hpp"
#include "reldiff/version.hpp"

namespace reldiff {
namespace cli {

namespace {

using nlohmann::json;

constexpr const char* kUnitsNote =
    "Units: x dimensionless, t in years, sigma in year^(-1/2), c in year^(-1). "
    "r0 = c^2/sigma^2 is echoed in every report header.";

// Resolves the output target. A relative --output path lands under
// RELDIFF_OUTPUT_DIR when that is set; no path means standard output.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
            return;
        }
        std::string full = path;
        const char* dir = std::getenv("RELDIFF_OUTPUT_DIR");
        if (dir && *dir && path.front() != '/')
            full = std::string(dir) + "/" + path;
        file_.open(full);
        if (!file_)
            throw validation_error("cannot open output path '" + full + "'");
        os_ = &file_;
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_ = nullptr;
};

std::string model_header(const ModelParams& params) {
    return "# sigma=" + io::format_double(params.sigma) +
           " c=" + io::format_double(params.c) +
           " r0=" + io::format_double(params.r0());
}

json model_json(const ModelParams& params) {
    return json{{"sigma", params.sigma}, {"c", params.c}, {"r0", params.r0()}};
}

// Trapezoid normalization over a grid extended far enough that the
// truncated tail mass is negligible against the 1e-6 reporting target.
double extended_trapezoid_mass(double t, const ModelParams& params,
                               const GridSpec& requested) {
    const double bulk = 8.0 * (params.sigma * std::sqrt(t) + params.c * t);
    const double half_width =
        std::max({std::abs(requested.x_min), std::abs(requested.x_max), bulk}) +
        45.0 / params.lambda();
    // resolve both the Gaussian core (sigma sqrt(t)) and the narrow
    // Cauchy-like core of width ~ c t that appears at small c t
    double h = std::min({requested.spacing(),
                         params.sigma * std::sqrt(t) / 32.0,
                         (params.sigma * std::sqrt(t) + params.c * t) / 64.0});
    std::size_t n = std::size_t(std::ceil(2.0 * half_width / h)) + 1;
    if (n > 20000000) { // cap the work for extreme parameter corners
        n = 20000000;
        h = 2.0 * half_width / double(n - 1);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -half_width + double(i) * h;
        const double p = transition_density(x, t, params);
        sum += (i == 0 || i + 1 == n) ? 0.5 * p : p;
    }
    return sum * h;
}

struct DensityArgs {
    double sigma = 1.0, c = 1.0, t = 1.0;
    double x_min = -5.0, x_max = 5.0;
    std::size_t n = 101;
};

struct PriceArgs {
    double spot = 100.0, strike = 100.0, tau = 1.0, rate = 0.0;
    double sigma = 0.2, c = 1.0, zeta = 1.0;
    bool put = false;
};

struct SmileArgs {
    double spot = 100.0, maturity = 1.0, rate = 0.0;
    double sigma = 0.2, c = 1.0, zeta = 1.0;
    std::vector<double> strikes;
};

struct McArgs {
    double spot = 100.0, strike = 0.0, tau = 1.0, rate = 0.0;
    double sigma = 0.2, c = 1.0, zeta = 1.0;
    std::size_t paths = 100000, steps = 1;
    std::uint64_t seed = 42;
    bool full_increments = false;
};

int run_density(const DensityArgs& a, double quad_tol, const std::string& format,
                const std::string& output_path, std::ostream& out) {
    const ModelParams params(a.sigma, a.c);
    GridSpec grid{a.x_min, a.x_max, a.n};
    const DensityGrid table = tabulate_density(a.t, params, grid);
    const double norm = extended_trapezoid_mass(a.t, params, grid);
    (void)quad_tol;

    OutputTarget target(output_path, out);
    if (format == "json") {
        std::stringstream ss;
        io::write_density_json(ss, table);
        json j = json::parse(ss.str());
        j["model"] = model_json(params);
        j["norm"] = norm;
        target.stream() << j.dump(2) << "\n";
    } else {
        target.stream() << model_header(params)
                        << " t=" << io::format_double(a.t)
                        << " norm=" << io::format_double(norm) << "\n";
        // write_density_csv repeats the metadata comment; readers skip both
        io::write_density_csv(target.stream(), table);
    }
    return 0;
}

int run_price(const PriceArgs& a, double quad_tol, const std::string& format,
              const std::string& output_path, std::ostream& out) {
    const ModelParams params(a.sigma, a.c);
    OptionContract contract{a.strike, a.tau, 0.0, a.rate,
                            a.put ? OptionKind::put : OptionKind::call};
    QuadratureConfig quad;
    quad.abs_tol = quad_tol;
    quad.rel_tol = quad_tol;
    const PriceReport rep = a.put ? price_put(a.spot, contract, a.zeta, params, quad)
                                  : price_call(a.spot, contract, a.zeta, params, quad);

    OutputTarget target(output_path, out);
    if (format == "json") {
        std::stringstream ss;
        io::write_price_report_json(ss, rep);
        json j = json::parse(ss.str());
        j["model"] = model_json(params);
        j["zeta"] = a.zeta;
        j["kind"] = a.put ? "put" : "call";
        target.stream() << j.dump(2) << "\n";
    } else {
        target.stream() << model_header(params)
                        << " zeta=" << io::format_double(a.zeta)
                        << " kind=" << (a.put ? "put" : "call") << "\n";
        io::write_price_report_csv(target.stream(), rep);
    }
    return 0;
}

int run_hedge(const PriceArgs& a, double quad_tol, const std::string& format,
              const std::string& output_path, std::ostream& out) {
    const ModelParams params(a.sigma, a.c);
    OptionContract contract{a.strike, a.tau, 0.0, a.rate,
                            a.put ? OptionKind::put : OptionKind::call};
    QuadratureConfig quad;
    quad.abs_tol = quad_tol;
    quad.rel_tol = quad_tol;
    const HedgePortfolio h = hedge_portfolio(a.spot, contract, a.zeta, params, quad);

    OutputTarget target(output_path, out);
    if (format == "json") {
        json j{{"phi", h.phi}, {"psi", h.psi}, {"value", h.value},
               {"model", model_json(params)}, {"zeta", a.zeta}};
        target.stream() << j.dump(2) << "\n";
    } else {
        target.stream() << model_header(params)
                        << " zeta=" << io::format_double(a.zeta) << "\n";
        target.stream() << "phi,psi,value\n"
                        << io::format_double(h.phi) << ","
                        << io::format_double(h.psi) << ","
                        << io::format_double(h.value) << "\n";
    }
    return 0;
}

int run_smile(const SmileArgs& a, double quad_tol, const std::string& format,
              const std::string& output_path, std::ostream& out) {
    const ModelParams params(a.sigma, a.c);
    QuadratureConfig quad;
    quad.abs_tol = quad_tol;
    quad.rel_tol = quad_tol;
    const SmileCurve curve =
        smile_curve(a.spot, a.maturity, a.rate, a.strikes, a.zeta, params, quad);

    OutputTarget target(output_path, out);
    if (format == "json") {
        std::stringstream ss;
        io::write_smile_json(ss, curve);
        json j = json::parse(ss.str());
        j["model"] = model_json(params);
        j["zeta"] = a.zeta;
        target.stream() << j.dump(2) << "\n";
    } else {
        target.stream() << model_header(params)
                        << " zeta=" << io::format_double(a.zeta) << "\n";
        io::write_smile_csv(target.stream(), curve);
    }
    return 0;
}

int run_mc(const McArgs& a, const std::string& format,
           const std::string& output_path, std::ostream& out) {
    const ModelParams params(a.sigma, a.c);
    MCConfig config{a.paths, a.steps, a.tau, a.seed};

    OutputTarget target(output_path, out);
    if (a.strike > 0.0) {
        OptionContract contract{a.strike, a.tau, 0.0, a.rate, OptionKind::call};
        const MCPrice mc = mc_price_call(a.spot, contract, a.zeta, params, config);
        if (format == "json") {
            json j{{"price", mc.price}, {"std_error", mc.std_error},
                   {"n_paths", mc.n_paths}, {"model", model_json(params)},
                   {"zeta", a.zeta}, {"seed", a.seed}};
            target.stream() << j.dump(2) << "\n";
        } else {
            target.stream() << model_header(params)
                            << " zeta=" << io::format_double(a.zeta)
                            << " seed=" << a.seed << "\n";
            target.stream() << "price,std_error,n_paths\n"
                            << io::format_double(mc.price) << ","
                            << io::format_double(mc.std_error) << ","
                            << mc.n_paths << "\n";
        }
        return 0;
    }
    const PathSet paths = simulate_paths(config, params);
    if (format == "json") {
        std::stringstream ss;
        io::write_paths_summary_json(ss, paths);
        json j = json::parse(ss.str());
        j["model"] = model_json(params);
        j["seed"] = a.seed;
        target.stream() << j.dump(2) << "\n";
    } else {
        target.stream() << model_header(params) << " seed=" << a.seed << "\n";
        io::write_paths_csv(target.stream(), paths, a.full_increments);
    }
    return 0;
}

int run_selfcheck(std::ostream& out) {
    struct Check {
        std::string name;
        bool pass;
    };
    std::vector<Check> checks;

    { // normalization over a small parameter spread
        bool ok = true;
        for (double sigma : {0.2, 1.0}) {
            for (double c : {0.1, 1.0, 10.0}) {
                const ModelParams p(sigma, c);
                ok = ok && std::abs(density_mass(1.0, p) - 1.0) <= 1e-8;
            }
        }
        checks.push_back({"normalization: integral of the density is 1", ok});
    }
    { // semigroup: half-step convolution reproduces the full step
        const ModelParams p(1.0, 1.0);
        const auto f = [&](double u) { return transition_density(u, 0.5, p); };
        bool ok = true;
        for (double x : {0.0, 0.7, 2.0}) {
            const double conv = convolve_at(f, f, x, 30.0);
            ok = ok && std::abs(conv - transition_density(x, 1.0, p)) <= 1e-6;
        }
        checks.push_back({"semigroup: half-step self-convolution matches the full step", ok});
    }
    { // exponential martingale has constant expectation
        const ModelParams p(1.0, 1.0);
        const MartingaleSpec spec(1.0, 0.5 * p.lambda(), p);
        const double t = 1.0;
        const auto log_f = [&](double x) { return spec.zeta * x - spec.beta * t; };
        const double mean = expectation_log(log_f, spec.zeta, t, p);
        checks.push_back({"martingale: expectation stays at the initial value",
                          std::abs(mean - spec.s0) <= 1e-6 * spec.s0});
    }
    { // Gaussian limit of the ATM call at large c
        const ModelParams p(0.2, 16.0);
        OptionContract contract{100.0, 1.0, 0.0, 0.0, OptionKind::call};
        const double v = price_call(100.0, contract, 1.0, p).price;
        const double ref = bsm_price(100.0, contract, 0.2);
        checks.push_back({"gaussian limit: ATM call converges to the lognormal price",
                          std::abs(v - ref) <= 1e-3 * ref});
    }

    bool all = true;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "\n";
        all = all && c.pass;
    }
    out << (all ? "selfcheck: all invariants hold\n"
                : "selfcheck: invariant violation detected\n");
    return all ? 0 : 3;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{std::string("Relativistic diffusion pricing toolkit. ") + kUnitsNote,
                 "reldiff"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(0, 1);

    std::string format = "csv";
    std::string output_path;
    double quad_tol = 1e-10;

    DensityArgs da;
    auto* density_cmd = app.add_subcommand(
        "density", "Tabulate the fat-tailed transition density on a grid");
    density_cmd->add_option("--sigma", da.sigma, "diffusion scale, year^(-1/2)");
    density_cmd->add_option("--c", da.c, "characteristic speed, year^(-1)");
    density_cmd->add_option("--t", da.t, "elapsed time, years")->check(CLI::PositiveNumber);
    density_cmd->add_option("--x-min", da.x_min, "left grid edge");
    density_cmd->add_option("--x-max", da.x_max, "right grid edge");
    density_cmd->add_option("--n", da.n, "grid points (>= 2)");

    PriceArgs pa;
    auto* price_cmd = app.add_subcommand(
        "price", "Price a European option and report the hedge ratios");
    PriceArgs ha;
    auto* hedge_cmd = app.add_subcommand(
        "hedge", "Report the self-financing stock/bond replication of an option");
    for (auto [cmd, argp] : {std::pair{price_cmd, &pa}, std::pair{hedge_cmd, &ha}}) {
        cmd->add_option("--spot", argp->spot, "current stock price");
        cmd->add_option("--strike", argp->strike, "strike S_*");
        cmd->add_option("--tau", argp->tau, "time to expiry, years");
        cmd->add_option("--rate", argp->rate, "riskless rate, per year");
        cmd->add_option("--sigma", argp->sigma, "diffusion scale, year^(-1/2)");
        cmd->add_option("--c", argp->c, "characteristic speed, year^(-1)");
        cmd->add_option("--zeta", argp->zeta,
                        "log-volatility exponent; must satisfy zeta < c/sigma^2");
        cmd->add_flag("--put", argp->put, "price a put instead of a call");
    }

    SmileArgs sa;
    auto* smile_cmd = app.add_subcommand(
        "smile", "Implied-volatility smile across strikes at one maturity");
    smile_cmd->add_option("--spot", sa.spot, "current stock price");
    smile_cmd->add_option("--maturity", sa.maturity, "expiry, years");
    smile_cmd->add_option("--rate", sa.rate, "riskless rate, per year");
    smile_cmd->add_option("--sigma", sa.sigma, "diffusion scale, year^(-1/2)");
    smile_cmd->add_option("--c", sa.c, "characteristic speed, year^(-1)");
    smile_cmd->add_option("--zeta", sa.zeta, "log-volatility exponent");
    smile_cmd->add_option("--strikes", sa.strikes,
                          "strictly increasing strike list")->required();

    McArgs ma;
    auto* mc_cmd = app.add_subcommand(
        "mc", "Monte Carlo sampler; prices a call when --strike is given");
    mc_cmd->add_option("--spot", ma.spot, "current stock price");
    mc_cmd->add_option("--strike", ma.strike, "call strike (omit to dump path summary)");
    mc_cmd->add_option("--tau", ma.tau, "horizon / time to expiry, years");
    mc_cmd->add_option("--rate", ma.rate, "riskless rate, per year");
    mc_cmd->add_option("--sigma", ma.sigma, "diffusion scale, year^(-1/2)");
    mc_cmd->add_option("--c", ma.c, "characteristic speed, year^(-1)");
    mc_cmd->add_option("--zeta", ma.zeta, "log-volatility exponent");
    mc_cmd->add_option("--paths", ma.paths, "number of paths");
    mc_cmd->add_option("--steps", ma.steps, "steps per path");
    mc_cmd->add_option("--seed", ma.seed, "RNG seed");
    mc_cmd->add_flag("--full-increments", ma.full_increments,
                     "CSV dump of every increment instead of terminal values");

    auto* selfcheck_cmd = app.add_subcommand(
        "selfcheck", "Run the built-in invariant suite and print pass/fail lines");

    for (auto* cmd : {density_cmd, price_cmd, hedge_cmd, smile_cmd, mc_cmd}) {
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", output_path,
                        "output file; relative paths land under $RELDIFF_OUTPUT_DIR");
        cmd->add_option("--quad-tol", quad_tol, "quadrature tolerance");
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForVersion&) {
        out << version_string() << "\n";
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (density_cmd->parsed())
            return run_density(da, quad_tol, format, output_path, out);
        if (price_cmd->parsed())
            return run_price(pa, quad_tol, format, output_path, out);
        if (hedge_cmd->parsed())
            return run_hedge(ha, quad_tol, format, output_path, out);
        if (smile_cmd->parsed())
            return run_smile(sa, quad_tol, format, output_path, out);
        if (mc_cmd->parsed())
            return run_mc(ma, format, output_path, out);
        if (selfcheck_cmd->parsed())
            return run_selfcheck(out);
        out << app.help();
        return 0;
    } catch (const convergence_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cli
} // namespace reldiff
