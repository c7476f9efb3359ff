#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rebgk/bessel.hpp"
#include "rebgk/io.hpp"
#include "rebgk/scenario.hpp"
#include "selfcheck.hpp"

namespace {

int do_run(const rebgk::RunConfig& cfg, const std::string& cli_out) {
    const std::string out = rebgk::resolve_output_dir(cli_out, cfg);
    const auto result = rebgk::execute_run(cfg, out, std::cout);
    return result.completed ? 0 : 1;
}

int do_bessel(const std::vector<double>& zs, bool scaled) {
    std::printf("%-22s %-22s %-22s %-22s\n", "z", scaled ? "e^z K0" : "K0",
                scaled ? "e^z K1" : "K1", scaled ? "e^z K2" : "K2");
    for (double z : zs) {
        const double k0 = scaled ? rebgk::besselK_scaled(0, z) : rebgk::besselK(0, z);
        const double k1 = scaled ? rebgk::besselK_scaled(1, z) : rebgk::besselK(1, z);
        const double k2 = scaled ? rebgk::besselK_scaled(2, z) : rebgk::besselK(2, z);
        std::printf("%-22.17g %-22.17g %-22.17g %-22.17g\n", z, k0, k1, k2);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relativistic BGK relaxation solver for reactive four-species mixtures"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario from a config file");
    run_cmd->add_option("-c,--config", config_path, "Config file (TOML-style)")->required();
    run_cmd->add_option("-o,--out", out_dir, "Output directory");

    auto* case1_cmd = app.add_subcommand("case1", "Run the near-equilibrium preset");
    case1_cmd->add_option("-o,--out", out_dir, "Output directory");

    auto* case2_cmd = app.add_subcommand("case2", "Run the triangular far-from-equilibrium preset");
    case2_cmd->add_option("-o,--out", out_dir, "Output directory");

    auto* validate_cmd =
        app.add_subcommand("validate", "Run the built-in solver/Bessel property suites");

    std::vector<double> zs;
    bool scaled = false;
    auto* bessel_cmd = app.add_subcommand("bessel", "Tabulate K0, K1, K2");
    bessel_cmd->add_option("-z,--z", zs, "Arguments z > 0")->required()->expected(-1);
    bessel_cmd->add_flag("--scaled", scaled, "Print e^z K_n(z)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return do_run(rebgk::load_config(config_path), out_dir);
        if (case1_cmd->parsed()) {
            auto cfg = rebgk::default_case1_config();
            cfg.output_dir = "out_case1";
            return do_run(cfg, out_dir);
        }
        if (case2_cmd->parsed()) {
            auto cfg = rebgk::default_case2_config();
            cfg.output_dir = "out_case2";
            return do_run(cfg, out_dir);
        }
        if (validate_cmd->parsed())
            return rebgk_tool::run_selfcheck(std::cout) == 0 ? 0 : 1;
        if (bessel_cmd->parsed()) return do_bessel(zs, scaled);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
