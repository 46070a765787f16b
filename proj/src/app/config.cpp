// SPDX-License-Identifier: Apache-2.0
#include "afescale/app/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "afescale/app/datasets.hpp"
#include "afescale/errors.hpp"
#include "afescale/numerics.hpp"

namespace afescale::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& message) {
    throw config_error(where, message);
}

void expect_object(const json& node, const std::string& where) {
    if (!node.is_object()) fail(where, "expected an object");
}

void check_keys(const json& node, const std::string& where, std::set<std::string> allowed) {
    expect_object(node, where);
    for (const auto& item : node.items()) {
        if (!allowed.count(item.key())) {
            fail(where + "/" + item.key(), "unknown key");
        }
    }
}

double get_number(const json& node, const std::string& where, const std::string& key) {
    if (!node.contains(key)) fail(where + "/" + key, "missing required number");
    const json& v = node.at(key);
    if (!v.is_number()) fail(where + "/" + key, "expected a number");
    return v.get<double>();
}

double get_number_or(const json& node, const std::string& where, const std::string& key,
                     double fallback) {
    if (!node.contains(key)) return fallback;
    return get_number(node, where, key);
}

// Exactly one of a linear-unit key and a dB-flavoured key must be present.
double dual_unit(const json& node, const std::string& where, const std::string& linear_key,
                 const std::string& db_key, double (*convert)(double)) {
    const bool has_linear = node.contains(linear_key);
    const bool has_db = node.contains(db_key);
    if (has_linear == has_db) {
        fail(where, "provide exactly one of '" + linear_key + "' and '" + db_key + "'");
    }
    if (has_linear) return get_number(node, where, linear_key);
    return convert(get_number(node, where, db_key));
}

// Accepts a number in dB or the string "inf" for an unlimited range.
double mu_db_value(const json& v, const std::string& where) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        fail(where, "expected a dB number or \"inf\"");
    }
    if (!v.is_number()) fail(where, "expected a dB number or \"inf\"");
    return v.get<double>();
}

std::vector<double> number_list(const json& node, const std::string& where,
                                const std::string& key) {
    if (!node.contains(key)) fail(where + "/" + key, "missing required list");
    const json& v = node.at(key);
    if (!v.is_array() || v.empty()) fail(where + "/" + key, "expected a non-empty list");
    std::vector<double> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            fail(where + "/" + key + "/" + std::to_string(i), "expected a number");
        }
        values.push_back(v[i].get<double>());
    }
    return values;
}

std::vector<double> mu_db_list(const json& node, const std::string& where,
                               const std::string& key) {
    if (!node.contains(key)) fail(where + "/" + key, "missing required list");
    const json& v = node.at(key);
    if (!v.is_array() || v.empty()) fail(where + "/" + key, "expected a non-empty list");
    std::vector<double> values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        values.push_back(mu_db_value(v[i], where + "/" + key + "/" + std::to_string(i)));
    }
    return values;
}

numerics::PhysicalConstants parse_constants(const json& node, const std::string& where) {
    check_keys(node, where, {"temperature_k", "input_resistance_ohm", "boltzmann_k"});
    numerics::PhysicalConstants constants;
    constants.temperature_k = get_number_or(node, where, "temperature_k", constants.temperature_k);
    constants.input_resistance_ohm =
        get_number_or(node, where, "input_resistance_ohm", constants.input_resistance_ohm);
    constants.boltzmann_k = get_number_or(node, where, "boltzmann_k", constants.boltzmann_k);
    try {
        constants.validate();
    } catch (const std::domain_error& e) {
        fail(where, e.what());
    }
    return constants;
}

afe::ChainFoM parse_chain(const json& node, const std::string& where) {
    check_keys(node, where, {"blocks"});
    if (!node.contains("blocks") || !node.at("blocks").is_array() || node.at("blocks").empty()) {
        fail(where + "/blocks", "expected a non-empty block list");
    }
    afe::ChainFoM chain;
    const json& blocks = node.at("blocks");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string block_where = where + "/blocks/" + std::to_string(i);
        check_keys(blocks[i], block_where, {"name", "p_c_w"});
        afe::BlockFoM fom;
        fom.name = blocks[i].contains("name") ? blocks[i].at("name").get<std::string>()
                                              : "block" + std::to_string(i);
        fom.power_per_dr_w = get_number(blocks[i], block_where, "p_c_w");
        chain.blocks.push_back(std::move(fom));
    }
    try {
        chain.validate();
    } catch (const std::domain_error& e) {
        fail(where, e.what());
    }
    return chain;
}

ChainTargetsConfig parse_targets(const json& node, const std::string& where,
                                 const numerics::PhysicalConstants& constants,
                                 std::size_t chain_length) {
    check_keys(node, where,
               {"noise_factor", "noise_figure_db", "iip3_voltage_sq_v2", "iip3_dbm",
                "gain_sets_db"});
    ChainTargetsConfig targets;
    targets.noise_factor =
        dual_unit(node, where, "noise_factor", "noise_figure_db", numerics::db_to_linear);
    if (node.contains("iip3_dbm")) {
        const double iip3_w = numerics::dbm_to_watt(get_number(node, where, "iip3_dbm"));
        targets.iip3_voltage_sq =
            afe::iip3_voltage_from_power(iip3_w, constants.input_resistance_ohm);
        if (node.contains("iip3_voltage_sq_v2")) {
            fail(where, "provide exactly one of 'iip3_voltage_sq_v2' and 'iip3_dbm'");
        }
    } else {
        targets.iip3_voltage_sq = get_number(node, where, "iip3_voltage_sq_v2");
    }
    if (node.contains("gain_sets_db")) {
        const json& sets = node.at("gain_sets_db");
        if (!sets.is_array() || sets.empty()) fail(where + "/gain_sets_db", "expected a list");
        for (std::size_t s = 0; s < sets.size(); ++s) {
            const std::string set_where = where + "/gain_sets_db/" + std::to_string(s);
            if (!sets[s].is_array() || sets[s].size() != chain_length) {
                fail(set_where, "gain set length must match the chain length");
            }
            std::vector<double> gains;
            for (const auto& g : sets[s]) {
                if (!g.is_number()) fail(set_where, "expected dB numbers");
                gains.push_back(numerics::db_to_linear(g.get<double>()));
            }
            targets.gain_sets.push_back(std::move(gains));
        }
    } else {
        targets.gain_sets.push_back(std::vector<double>(chain_length, 1.0));
    }
    return targets;
}

afe::Scenario parse_scenario(const json& node, const std::string& where) {
    check_keys(node, where,
               {"sndr", "sndr_db", "bandwidth_hz", "bandwidth_mhz", "p_s_w", "p_s_dbm", "p_i_w",
                "p_i_dbm", "alpha_im3"});
    afe::Scenario s;
    s.sndr = dual_unit(node, where, "sndr", "sndr_db", numerics::db_to_linear);
    const bool has_hz = node.contains("bandwidth_hz");
    const bool has_mhz = node.contains("bandwidth_mhz");
    if (has_hz == has_mhz) {
        fail(where, "provide exactly one of 'bandwidth_hz' and 'bandwidth_mhz'");
    }
    s.bandwidth_hz = has_hz ? get_number(node, where, "bandwidth_hz")
                            : 1e6 * get_number(node, where, "bandwidth_mhz");
    s.signal_power_w = dual_unit(node, where, "p_s_w", "p_s_dbm", numerics::dbm_to_watt);
    s.interferer_power_w = dual_unit(node, where, "p_i_w", "p_i_dbm", numerics::dbm_to_watt);
    s.alpha_im3 = get_number(node, where, "alpha_im3");
    try {
        s.validate();
    } catch (const std::domain_error& e) {
        fail(where, e.what());
    }
    return s;
}

ScaleLawConfig parse_scale_law(const json& node, const std::string& where) {
    check_keys(node, where, {"law", "sigma", "sigma_db", "f1", "f1_db"});
    ScaleLawConfig cfg;
    if (!node.contains("law") || !node.at("law").is_string()) {
        fail(where + "/law", "expected one of bandwidth|sndr|signal|interference");
    }
    const std::string name = node.at("law").get<std::string>();
    if (name == "bandwidth") {
        cfg.law = scaling::Law::bandwidth;
    } else if (name == "sndr") {
        cfg.law = scaling::Law::sndr;
    } else if (name == "signal") {
        cfg.law = scaling::Law::signal;
    } else if (name == "interference") {
        cfg.law = scaling::Law::interference;
    } else {
        fail(where + "/law", "unknown law '" + name + "'");
    }
    cfg.sigma = dual_unit(node, where, "sigma", "sigma_db", numerics::db_to_linear);
    if (node.contains("f1") || node.contains("f1_db")) {
        cfg.pre_noise_factor = dual_unit(node, where, "f1", "f1_db", numerics::db_to_linear);
    } else if (cfg.law != scaling::Law::interference) {
        fail(where, "law '" + name + "' needs 'f1' or 'f1_db'");
    } else {
        cfg.pre_noise_factor = std::numeric_limits<double>::infinity();
    }
    return cfg;
}

QamSweepConfig parse_qam(const json& node, const std::string& where) {
    check_keys(node, where, {"m_1", "p_e_1", "rho_1", "m_2_grid", "p_e_2_grid", "mu_db_grid"});
    QamSweepConfig cfg;
    const double m1 = get_number(node, where, "m_1");
    cfg.m_1 = static_cast<unsigned>(m1);
    cfg.p_e_1 = get_number(node, where, "p_e_1");
    cfg.rho_1 = get_number_or(node, where, "rho_1",
                              m1 >= 2.0 ? std::log2(m1) : 0.0);
    if (!node.contains("m_2_grid") || !node.at("m_2_grid").is_array()) {
        fail(where + "/m_2_grid", "expected a list of constellation sizes");
    }
    for (const auto& m : node.at("m_2_grid")) {
        if (!m.is_number_unsigned() && !m.is_number_integer()) {
            fail(where + "/m_2_grid", "expected integers");
        }
        cfg.m_2_grid.push_back(m.get<unsigned>());
    }
    cfg.p_e_2_grid = number_list(node, where, "p_e_2_grid");
    cfg.mu_db_grid = mu_db_list(node, where, "mu_db_grid");
    try {
        link::QamConfig{cfg.m_1, cfg.p_e_1, cfg.rho_1}.validate();
        for (unsigned m : cfg.m_2_grid) {
            link::QamConfig{m, cfg.p_e_1, cfg.rho_1}.validate();
        }
    } catch (const std::domain_error& e) {
        fail(where, e.what());
    }
    return cfg;
}

link::CodedSystem parse_code_entry(const json& node, const std::string& where) {
    check_keys(node, where, {"label", "r_c", "g_c_db", "decoder_mw", "bitrate_mbps"});
    link::CodedSystem code;
    if (!node.contains("label") || !node.at("label").is_string()) {
        fail(where + "/label", "missing code label");
    }
    code.label = node.at("label").get<std::string>();
    code.code_rate = get_number(node, where, "r_c");
    code.coding_gain = numerics::db_to_linear(get_number(node, where, "g_c_db"));
    code.decoder_power_w = 1e-3 * get_number(node, where, "decoder_mw");
    code.info_bitrate_bps = 1e6 * get_number(node, where, "bitrate_mbps");
    try {
        code.validate();
    } catch (const std::domain_error& e) {
        fail(where, e.what());
    }
    return code;
}

// Resolves a dataset path relative to the configuration file's directory.
std::string resolve_sibling(const std::string& path, const std::string& origin) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    if (p.is_absolute()) return path;
    const fs::path origin_path(origin);
    std::error_code ec;
    if (fs::exists(origin_path, ec) && origin_path.has_parent_path()) {
        return (origin_path.parent_path() / p).string();
    }
    return path;
}

CodingConfig parse_codes(const json& node, const std::string& where, const std::string& origin) {
    check_keys(node, where,
               {"uncoded_afe_mw", "uncoded_bitrate_mbps", "mu_db", "entries", "file", "sweep"});
    CodingConfig cfg;
    cfg.uncoded_afe_power_w = 1e-3 * get_number(node, where, "uncoded_afe_mw");
    cfg.uncoded_bitrate_bps = 1e6 * get_number(node, where, "uncoded_bitrate_mbps");
    if (node.contains("mu_db")) cfg.mu_db = mu_db_value(node.at("mu_db"), where + "/mu_db");

    const bool has_entries = node.contains("entries");
    const bool has_file = node.contains("file");
    if (has_entries && has_file) {
        fail(where, "provide at most one of 'entries' and 'file'");
    }
    if (has_entries) {
        const json& entries = node.at("entries");
        if (!entries.is_array()) fail(where + "/entries", "expected a list");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            cfg.entries.push_back(
                parse_code_entry(entries[i], where + "/entries/" + std::to_string(i)));
        }
    } else if (has_file) {
        if (!node.at("file").is_string()) fail(where + "/file", "expected a path");
        const std::string path = resolve_sibling(node.at("file").get<std::string>(), origin);
        std::ifstream in(path);
        if (!in) fail(where + "/file", "cannot open dataset '" + path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        cfg.entries = parse_codes_dataset(buffer.str(), path);
    }

    if (node.contains("sweep")) {
        const std::string sweep_where = where + "/sweep";
        const json& sweep = node.at("sweep");
        check_keys(sweep, sweep_where,
                   {"r_c_values", "g_c_db_min", "g_c_db_max", "g_c_db_step", "mu_db_grid"});
        CodingSweepConfig s;
        s.code_rates = number_list(sweep, sweep_where, "r_c_values");
        s.gain_db_min = get_number_or(sweep, sweep_where, "g_c_db_min", 0.0);
        s.gain_db_max = get_number_or(sweep, sweep_where, "g_c_db_max", 10.0);
        s.gain_db_step = get_number_or(sweep, sweep_where, "g_c_db_step", 0.25);
        s.mu_db_grid = mu_db_list(sweep, sweep_where, "mu_db_grid");
        if (!(s.gain_db_step > 0.0) || !(s.gain_db_max >= s.gain_db_min)) {
            fail(sweep_where, "coding-gain sweep range is empty");
        }
        cfg.sweep = std::move(s);
    }
    return cfg;
}

FadingConfig parse_fading(const json& node, const std::string& where) {
    check_keys(node, where,
               {"omega_grid", "sndr_min", "sndr_min_db", "alpha_im3", "beta_w", "beta_dbm",
                "mu_db_grid", "policies"});
    FadingConfig cfg;
    cfg.omega_grid = number_list(node, where, "omega_grid");
    cfg.min_sndr = dual_unit(node, where, "sndr_min", "sndr_min_db", numerics::db_to_linear);
    cfg.alpha_im3 = get_number(node, where, "alpha_im3");
    cfg.link_budget_w = dual_unit(node, where, "beta_w", "beta_dbm", numerics::dbm_to_watt);
    cfg.mu_db_grid = mu_db_list(node, where, "mu_db_grid");
    if (!node.contains("policies") || !node.at("policies").is_array() ||
        node.at("policies").empty()) {
        fail(where + "/policies", "expected a non-empty list of policies");
    }
    for (const auto& p : node.at("policies")) {
        if (!p.is_string()) fail(where + "/policies", "expected policy names");
        const std::string name = p.get<std::string>();
        if (name == "fixed") {
            cfg.policies.push_back(envadapt::PolicyKind::fixed);
        } else if (name == "two_step") {
            cfg.policies.push_back(envadapt::PolicyKind::two_step);
        } else if (name == "continuous") {
            cfg.policies.push_back(envadapt::PolicyKind::continuous);
        } else {
            fail(where + "/policies", "unknown policy '" + name + "'");
        }
    }
    return cfg;
}

InterferenceConfig parse_interference(const json& node, const std::string& where) {
    check_keys(node, where, {"delta_grid", "mu_db_grid", "baseline_afe_mw", "sensor_mw"});
    InterferenceConfig cfg;
    cfg.delta_grid = number_list(node, where, "delta_grid");
    cfg.mu_db_grid = mu_db_list(node, where, "mu_db_grid");
    cfg.baseline_afe_power_w = 1e-3 * get_number(node, where, "baseline_afe_mw");
    cfg.sensor_power_w = 1e-3 * get_number_or(node, where, "sensor_mw", 0.0);
    for (double d : cfg.delta_grid) {
        if (d < 0.0 || d > 1.0) fail(where + "/delta_grid", "probabilities must lie in [0, 1]");
    }
    return cfg;
}

envadapt::MonteCarloConfig parse_monte_carlo(const json& node, const std::string& where) {
    check_keys(node, where, {"samples", "seed", "confidence", "workers"});
    envadapt::MonteCarloConfig mc;
    mc.samples = static_cast<std::size_t>(get_number_or(node, where, "samples", 1e6));
    mc.seed = static_cast<std::uint64_t>(get_number_or(node, where, "seed", 1.0));
    mc.confidence = get_number_or(node, where, "confidence", 0.99);
    mc.workers = static_cast<unsigned>(get_number_or(node, where, "workers", 1.0));
    try {
        mc.validate();
    } catch (const std::domain_error& e) {
        fail(where, e.what());
    }
    return mc;
}

} // namespace

AnalysisConfig parse_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(origin, e.what());
    }
    const std::string where = origin;
    check_keys(root, where,
               {"constants", "chain", "targets", "scenario", "scenario_post", "scale_law", "qam",
                "codes", "fading", "interference", "monte_carlo"});

    AnalysisConfig cfg;
    if (root.contains("constants")) {
        cfg.constants = parse_constants(root.at("constants"), where + "/constants");
    }
    if (root.contains("chain")) {
        cfg.chain = parse_chain(root.at("chain"), where + "/chain");
    }
    if (root.contains("targets")) {
        if (!cfg.chain) fail(where + "/targets", "'targets' needs a 'chain' section");
        cfg.targets = parse_targets(root.at("targets"), where + "/targets", cfg.constants,
                                    cfg.chain->blocks.size());
    }
    if (root.contains("scenario")) {
        cfg.scenario = parse_scenario(root.at("scenario"), where + "/scenario");
    }
    if (root.contains("scenario_post")) {
        cfg.scenario_post = parse_scenario(root.at("scenario_post"), where + "/scenario_post");
    }
    if (root.contains("scale_law")) {
        cfg.scale_law = parse_scale_law(root.at("scale_law"), where + "/scale_law");
    }
    if (root.contains("qam")) {
        cfg.qam = parse_qam(root.at("qam"), where + "/qam");
    }
    if (root.contains("codes")) {
        cfg.codes = parse_codes(root.at("codes"), where + "/codes", origin);
    }
    if (root.contains("fading")) {
        cfg.fading = parse_fading(root.at("fading"), where + "/fading");
    }
    if (root.contains("interference")) {
        cfg.interference = parse_interference(root.at("interference"), where + "/interference");
    }
    if (root.contains("monte_carlo")) {
        cfg.monte_carlo = parse_monte_carlo(root.at("monte_carlo"), where + "/monte_carlo");
    }
    return cfg;
}

AnalysisConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path, "cannot open configuration file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

} // namespace afescale::app
