// Command-line front end.
//
//   qbm run --config <path> [--out <dir>]
//   qbm report --config <path>
//
// Exit codes: 0 success, 2 configuration error, 3 numerical or I/O failure.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "qbm/config.hpp"
#include "qbm/error.hpp"
#include "qbm/kernels/kernels.hpp"
#include "qbm/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int fail(const qbm::Error& e, bool config_stage) {
    std::cerr << "error: " << e.what() << '\n';
    return config_stage || qbm::is_config_error(e.code()) ? kExitConfig : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact harmonic quantum Brownian motion: spectrum, master and Langevin dynamics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    auto* run_cmd = app.add_subcommand("run", "Evaluate the configured products and write CSV files");
    run_cmd->add_option("--config", config_path, "Run configuration file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (overrides out_dir)");

    auto* report_cmd = app.add_subcommand("report", "Print the run report to stdout");
    report_cmd->add_option("--config", config_path, "Run configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    qbm::RunConfig config;
    try {
        config = qbm::load_config(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
    } catch (const qbm::Error& e) {
        return fail(e, true);
    }

    std::cerr << "kernels: " << qbm::kernels::active().name << '\n';
    try {
        if (*run_cmd) {
            for (const auto& path : qbm::run(config)) std::cerr << "wrote " << path.string() << '\n';
        } else if (*report_cmd) {
            const auto bath = qbm::build_bath(config.model);
            const auto occ0 = qbm::initial_occupations(config, bath);
            const auto spec = qbm::solve_spectrum(bath, config.model.omega0);
            std::cout << qbm::format_report(qbm::make_report(config, spec, occ0), config);
        }
    } catch (const qbm::Error& e) {
        return fail(e, false);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
