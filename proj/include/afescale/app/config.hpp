// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_APP_CONFIG_HPP
#define AFESCALE_APP_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "afescale/afe_core.hpp"
#include "afescale/env_adaptive.hpp"
#include "afescale/link_strategies.hpp"
#include "afescale/scaling_laws.hpp"

namespace afescale::app {

struct ChainTargetsConfig {
    double noise_factor = 0.0;
    double iip3_voltage_sq = 0.0;
    std::vector<std::vector<double>> gain_sets;  // voltage gain squared per block
};

struct ScaleLawConfig {
    scaling::Law law = scaling::Law::sndr;
    double sigma = 1.0;
    double pre_noise_factor = 0.0;
};

struct QamSweepConfig {
    unsigned m_1 = 0;
    double p_e_1 = 0.0;
    double rho_1 = 0.0;
    std::vector<unsigned> m_2_grid;
    std::vector<double> p_e_2_grid;
    std::vector<double> mu_db_grid;  // +inf entries model unlimited tuning
};

struct CodingSweepConfig {
    std::vector<double> code_rates;
    double gain_db_min = 0.0;
    double gain_db_max = 10.0;
    double gain_db_step = 0.25;
    std::vector<double> mu_db_grid;
};

struct CodingConfig {
    double uncoded_afe_power_w = 0.0;
    double uncoded_bitrate_bps = 0.0;
    double mu_db = std::numeric_limits<double>::infinity();
    std::vector<link::CodedSystem> entries;
    std::optional<CodingSweepConfig> sweep;
};

struct FadingConfig {
    std::vector<double> omega_grid;
    double min_sndr = 0.0;
    double alpha_im3 = 0.0;
    double link_budget_w = 0.0;
    std::vector<double> mu_db_grid;
    std::vector<envadapt::PolicyKind> policies;
};

struct InterferenceConfig {
    std::vector<double> delta_grid;
    std::vector<double> mu_db_grid;
    double baseline_afe_power_w = 0.0;
    double sensor_power_w = 0.0;
};

struct AnalysisConfig {
    numerics::PhysicalConstants constants;
    std::optional<afe::ChainFoM> chain;
    std::optional<ChainTargetsConfig> targets;
    std::optional<afe::Scenario> scenario;
    std::optional<afe::Scenario> scenario_post;
    std::optional<ScaleLawConfig> scale_law;
    std::optional<QamSweepConfig> qam;
    std::optional<CodingConfig> codes;
    std::optional<FadingConfig> fading;
    std::optional<InterferenceConfig> interference;
    envadapt::MonteCarloConfig monte_carlo;
};

/// Parses and schema-validates a JSON configuration document. Unknown keys
/// are rejected; dB/dBm quantities are converted to linear/watts here so the
/// analysis layers only ever see one unit system. `origin` names the source
/// (file path or tag) for error messages.
AnalysisConfig parse_config(const std::string& json_text, const std::string& origin);

AnalysisConfig load_config_file(const std::string& path);

} // namespace afescale::app

#endif
