#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qbm/config.hpp"
#include "qbm/error.hpp"
#include "qbm/run.hpp"

using namespace qbm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("qbm_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QBM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("CSV number formatting") {
    CHECK(format_csv_double(0.9) == "9.0000000000000002e-01");
    CHECK(format_csv_double(-2.0) == "-2.0000000000000000e+00");
    CHECK(format_csv_double(0.0) == "0.0000000000000000e+00");
}

TEST_CASE("spectrum product for the two-level case") {
    const auto dir = scratch("spectrum");
    auto c = parse_config("coupling = explicit\nomegas = 1\ncouplings = 0.1\noutputs = spectrum\n");
    c.out_dir = dir.string();
    const auto files = run(c);
    REQUIRE(files.size() == 1);

    std::istringstream csv(slurp(dir / "spectrum.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "nu,alpha,weight");
    const double expected[2][2] = {{0.9, 0.5}, {1.1, 0.5}};
    for (int nu = 0; nu < 2; ++nu) {
        REQUIRE(std::getline(csv, line));
        int idx = -1;
        double alpha = 0.0, weight = 0.0;
        REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf", &idx, &alpha, &weight) == 3);
        CHECK(idx == nu);
        CHECK(std::abs(alpha - expected[nu][0]) < 1e-12);
        CHECK(std::abs(weight - expected[nu][1]) < 1e-12);
    }
    CHECK_FALSE(std::getline(csv, line));
}

TEST_CASE("all products, headers and determinism") {
    const auto a = scratch("determinism_a");
    const auto b = scratch("determinism_b");
    auto c = parse_config("n_steps = 200\nfit_samples = 64\n");
    c.out_dir = a.string();
    run(c);
    c.out_dir = b.string();
    setenv("QBM_THREADS", "3", 1);
    run(c);
    unsetenv("QBM_THREADS");

    for (const char* name : {"spectrum.csv", "population.csv", "survival.csv", "bath_contribution.csv",
                             "position.csv", "coefficients.csv", "report.txt", "plot.gp"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(a / name));
        CHECK(slurp(a / name) == slurp(b / name));
    }

    const auto population = slurp(a / "population.csv");
    REQUIRE(population.rfind("t,value\n0.0000000000000000e+00,", 0) == 0);
    CHECK(std::abs(std::stod(population.substr(31, 23)) - 1.0) < 1e-12);
    std::size_t lines = 0;
    for (char ch : population) lines += ch == '\n';
    CHECK(lines == 202);
    CHECK(slurp(a / "coefficients.csv").rfind("t,omega2,gamma,denominator_ok\n", 0) == 0);

    const auto report = slurp(a / "report.txt");
    for (const char* key : {"eigenvalue_count = 101", "sum_rule_m0_residual", "gamma_fitted",
                            "gamma_golden_rule", "recurrence_time", "oscillator_period", "plateau_mean"})
        CHECK(report.find(key) != std::string::npos);
}

TEST_CASE("flagged coefficient rows have empty values") {
    std::ostringstream out;
    write_coefficients_csv(out, {{1.0, 2.0, 3.0, true}, {2.0, 0.0, 0.0, false}});
    CHECK(out.str() ==
          "t,omega2,gamma,denominator_ok\n"
          "1.0000000000000000e+00,2.0000000000000000e+00,3.0000000000000000e+00,1\n"
          "2.0000000000000000e+00,,,0\n");
}

TEST_CASE("plot script") {
    const auto dir = scratch("plot");
    CHECK_THROWS_AS(emit_plot_script({}, dir), Error);
    try {
        emit_plot_script({Product::Population}, dir);
        FAIL("expected MissingProduct");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingProduct);
    }

    write_file(dir / "population.csv", "t,value\n");
    const auto path = emit_plot_script({Product::Population}, dir);
    const auto one = slurp(path);
    CHECK(one.find("'population.csv'") != std::string::npos);
    CHECK(one.find("set ylabel '⟨N_Ω⟩'") != std::string::npos);
    CHECK(one.find("layout 1,1") != std::string::npos);

    for (const char* f : {"survival.csv", "bath_contribution.csv", "position.csv", "coefficients.csv"})
        write_file(dir / f, "t,value\n");
    const auto all = slurp(emit_plot_script(
        {Product::Population, Product::Survival, Product::Position, Product::Coefficients}, dir));
    CHECK(all.find("layout 4,1") != std::string::npos);
    for (const char* title : {"Population of the Brownian oscillator vs. t", "Survival probability vs. t",
                              "Mean position of the Brownian oscillator vs. t",
                              "Damping factor of the Langevin equation vs. t"})
        CHECK(all.find(title) != std::string::npos);

    try {
        emit_plot_script({Product::Spectrum, Product::Report}, dir);
        FAIL("expected MissingProduct");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingProduct);
    }
}

TEST_CASE("command-line exit codes") {
    const auto dir = scratch("cli");
    write_file(dir / "ok.cfg", "coupling = explicit\nomegas = 1\ncouplings = 0.1\noutputs = spectrum\n");
    write_file(dir / "bad.cfg", "N = 10\nbogus = 1\n");
    write_file(dir / "degenerate.cfg", "N = 2\n");
    write_file(dir / "poles.cfg",
               "coupling = explicit\nomegas = 1, 1.000000000000001\ncouplings = 0.1, 0.1\noutputs = spectrum\n");

    const std::string out = "--out " + (dir / "out").string();
    CHECK(run_cli("run --config " + (dir / "ok.cfg").string() + " " + out) == 0);
    CHECK(fs::exists(dir / "out" / "spectrum.csv"));
    CHECK(run_cli("run --config " + (dir / "bad.cfg").string() + " " + out) == 2);
    CHECK(run_cli("run --config " + (dir / "missing.cfg").string() + " " + out) == 2);
    CHECK(run_cli("run --config " + (dir / "degenerate.cfg").string() + " " + out) == 2);
    CHECK(run_cli("run " + out) == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("run --config " + (dir / "poles.cfg").string() + " " + out) == 3);
    // output path under a regular file cannot be created
    CHECK(run_cli("run --config " + (dir / "ok.cfg").string() + " --out " + (dir / "ok.cfg" / "x").string()) == 3);
    CHECK(run_cli("report --config " + (dir / "ok.cfg").string()) == 0);
}
