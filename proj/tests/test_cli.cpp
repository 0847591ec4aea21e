#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "reldiff/cli.hpp"
#include "reldiff/io.hpp"
#include "reldiff/pricing.hpp"

using namespace reldiff;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::stringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("version flag prints version and lattice hash") {
    const auto r = run_cli({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.1.0") != std::string::npos);
    CHECK(r.out.find("lattice") != std::string::npos);
}

TEST_CASE("help mentions the units convention") {
    const auto r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("year") != std::string::npos);
    CHECK(r.out.find("r0") != std::string::npos);
}

TEST_CASE("density command: row count, normalization metadata, r0 header") {
    const auto r = run_cli({"density", "--sigma", "1", "--c", "1", "--t", "1",
                            "--x-min", "-5", "--x-max", "5", "--n", "101",
                            "--format", "csv"});
    REQUIRE(r.code == 0);

    std::stringstream in(r.out);
    const DensityGrid grid = io::read_density_csv(in);
    CHECK(grid.x_values.size() == 101);
    CHECK(grid.params.sigma == 1.0);

    // r0 echoed, trapezoid normalization over the extended range within 1e-6
    CHECK(r.out.find("r0=1") != std::string::npos);
    const auto pos = r.out.find("norm=");
    REQUIRE(pos != std::string::npos);
    const double norm = std::stod(r.out.substr(pos + 5));
    CHECK(std::abs(norm - 1.0) <= 1e-6);
}

TEST_CASE("density CSV output is re-parseable with zero drift") {
    const auto r = run_cli({"density", "--sigma", "0.5", "--c", "2", "--t", "0.3",
                            "--x-min", "-2", "--x-max", "2", "--n", "21"});
    REQUIRE(r.code == 0);
    std::stringstream in(r.out);
    const DensityGrid grid = io::read_density_csv(in);
    REQUIRE(grid.x_values.size() == 21);
    const ModelParams p(0.5, 2.0);
    for (std::size_t i = 0; i < grid.x_values.size(); ++i)
        CHECK(grid.p_values[i] == transition_density(grid.x_values[i], 0.3, p));
}

TEST_CASE("price command approaches the lognormal reference at large c") {
    const auto r = run_cli({"price", "--spot", "100", "--strike", "100", "--tau", "1",
                            "--rate", "0", "--sigma", "0.2", "--zeta", "1",
                            "--c", "16", "--format", "json"});
    REQUIRE(r.code == 0);
    std::stringstream in(r.out);
    const PriceReport rep = io::read_price_report_json(in);
    OptionContract contract{100.0, 1.0, 0.0, 0.0, OptionKind::call};
    const double ref = bsm_price(100.0, contract, 0.2);
    CHECK(std::abs(rep.price - ref) <= 1e-3 * ref);
    CHECK(r.out.find("\"r0\"") != std::string::npos);
}

TEST_CASE("bound violation exits with code 2 and names the bound") {
    const auto r = run_cli({"price", "--spot", "100", "--strike", "100", "--tau", "1",
                            "--rate", "0", "--sigma", "1", "--zeta", "2",
                            "--c", "0.04"});
    CHECK(r.code == 2);
    CHECK(r.err.find("c/sigma^2") != std::string::npos);
}

TEST_CASE("invalid flags and values exit with code 2") {
    CHECK(run_cli({"density", "--no-such-flag"}).code == 2);
    CHECK(run_cli({"density", "--t", "-1"}).code == 2);
    CHECK(run_cli({"price", "--sigma", "-0.2"}).code == 2);
}

TEST_CASE("smile command output round-trips through the CSV reader") {
    const auto r = run_cli({"smile", "--spot", "100", "--maturity", "1", "--rate", "0",
                            "--sigma", "0.25", "--c", "0.0625", "--zeta", "0.8",
                            "--strikes", "80", "100", "120"});
    REQUIRE(r.code == 0);
    std::stringstream in(r.out);
    const SmileCurve curve = io::read_smile_csv(in);
    REQUIRE(curve.points.size() == 3);
    CHECK(curve.points[0].implied_vol > curve.points[1].implied_vol);
    CHECK(curve.points[2].implied_vol > curve.points[1].implied_vol);
}

TEST_CASE("hedge command reconstructs the option value") {
    const auto r = run_cli({"hedge", "--spot", "100", "--strike", "100", "--tau", "1",
                            "--sigma", "0.2", "--c", "0.08", "--zeta", "1",
                            "--format", "json"});
    REQUIRE(r.code == 0);
    const auto grab = [&](const std::string& key) {
        const auto pos = r.out.find("\"" + key + "\":");
        REQUIRE(pos != std::string::npos);
        return std::stod(r.out.substr(pos + key.size() + 3));
    };
    CHECK(std::abs(grab("phi") * 100.0 + grab("psi") - grab("value")) <= 1e-10);
}

TEST_CASE("mc command is deterministic for a fixed seed") {
    const std::vector<std::string> args{
        "mc", "--spot", "100", "--strike", "100", "--tau", "1", "--sigma", "0.2",
        "--c", "0.08", "--zeta", "1", "--paths", "20000", "--seed", "7"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto c_args = args;
    c_args.back() = "8";
    CHECK(run_cli(c_args).out != a.out);
}

TEST_CASE("mc without a strike dumps a path summary") {
    const auto r = run_cli({"mc", "--sigma", "1", "--c", "1", "--tau", "1",
                            "--paths", "500", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("terminal_variance") != std::string::npos);
}

TEST_CASE("selfcheck passes and prints one line per invariant") {
    const auto r = run_cli({"selfcheck"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    int lines = 0;
    for (char ch : r.out)
        if (ch == '\n') ++lines;
    CHECK(lines >= 4);
}

TEST_CASE("output path flag writes the report to a file") {
    const std::string path = "/tmp/reldiff_cli_test_out.csv";
    std::remove(path.c_str());
    const auto r = run_cli({"density", "--sigma", "1", "--c", "1", "--t", "1",
                            "--n", "11", "--output", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    const DensityGrid grid = io::read_density_csv(in);
    CHECK(grid.x_values.size() == 11);
    std::remove(path.c_str());
}
