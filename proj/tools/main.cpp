// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "afescale/app/commands.hpp"
#include "afescale/app/config.hpp"
#include "afescale/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitInfeasible = 4;

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
};

std::string default_out_dir() {
    if (const char* env = std::getenv("AFESCALE_OUT_DIR"); env && *env) return env;
    return ".";
}

afescale::app::AnalysisConfig require_config(const GlobalArgs& args) {
    if (args.config_path.empty()) {
        throw afescale::config_error("", "this command needs --config PATH");
    }
    return afescale::app::load_config_file(args.config_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"afescale: power scaling analysis for receiver analog front ends"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalArgs args;
    args.out_dir = default_out_dir();
    std::uint64_t seed_value = 0;
    std::size_t samples_value = 0;
    app.add_option("--config", args.config_path, "analysis configuration (JSON)");
    app.add_option("--out", args.out_dir, "output directory")->capture_default_str();
    app.add_option("--format", args.format, "csv or csv+plot")
        ->check(CLI::IsMember({"csv", "csv+plot"}))
        ->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed_value, "Monte Carlo seed override");
    auto* samples_opt = app.add_option("--samples", samples_value, "Monte Carlo sample override");

    auto* optimize = app.add_subcommand("optimize-chain",
                                        "verify the closed-form chain optimum numerically");
    auto* scale = app.add_subcommand("scale", "evaluate power scaling for a scenario pair or law");
    auto* qam = app.add_subcommand("qam", "QAM degradation power-savings sweep");
    auto* coding = app.add_subcommand("coding", "error-control-coding receiver budget");
    auto* fading = app.add_subcommand("fading", "fading-adaptive expected power analysis");
    auto* interference =
        app.add_subcommand("interference", "interference-adaptive expected power analysis");
    auto* reproduce =
        app.add_subcommand("reproduce", "regenerate a bundled reference dataset and check it");
    std::string target;
    reproduce->add_option("target", target, "fig2|fig3|fig5a|fig5b|table2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*seed_opt) args.seed = seed_value;
    if (*samples_opt) args.samples = samples_value;

    afescale::app::CommandOptions options;
    options.with_plot = args.format == "csv+plot";
    options.seed = args.seed;
    options.samples = args.samples;

    try {
        afescale::app::CommandResult result;
        if (*optimize) {
            result = afescale::app::run_optimize_chain(require_config(args));
        } else if (*scale) {
            result = afescale::app::run_scale(require_config(args));
        } else if (*qam) {
            result = afescale::app::run_qam(require_config(args), options);
        } else if (*coding) {
            result = afescale::app::run_coding(require_config(args), options);
        } else if (*fading) {
            result = afescale::app::run_fading(require_config(args), options);
        } else if (*interference) {
            result = afescale::app::run_interference(require_config(args), options);
        } else if (*reproduce) {
            std::optional<afescale::app::AnalysisConfig> override_config;
            if (!args.config_path.empty()) {
                override_config = afescale::app::load_config_file(args.config_path);
            }
            result = afescale::app::run_reproduce(target, override_config, options);
        }

        afescale::app::write_outputs(result, args.out_dir);
        std::fputs(result.report.c_str(), stdout);
        for (const auto& file : result.files) {
            std::printf("wrote %s/%s\n", args.out_dir.c_str(), file.name.c_str());
        }
        if (!result.tolerance_ok) {
            std::fputs("reference tolerances NOT met\n", stdout);
            return kExitTolerance;
        }
        return kExitOk;
    } catch (const afescale::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const afescale::validity_error& e) {
        std::fprintf(stderr, "validity error [%s]: %s\n", e.constraint().c_str(), e.what());
        return kExitInfeasible;
    } catch (const afescale::infeasibility_error& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
