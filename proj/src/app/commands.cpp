// SPDX-License-Identifier: Apache-2.0
#include "afescale/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "afescale/app/csv.hpp"
#include "afescale/app/datasets.hpp"
#include "afescale/app/svg_plot.hpp"
#include "afescale/chain_optimizer.hpp"
#include "afescale/errors.hpp"

namespace afescale::app {

namespace {

std::string fmt(const char* format, double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), format, value);
    return buffer;
}

envadapt::MonteCarloConfig effective_mc(const AnalysisConfig& config,
                                        const CommandOptions& options) {
    envadapt::MonteCarloConfig mc = config.monte_carlo;
    if (options.seed) mc.seed = *options.seed;
    if (options.samples) mc.samples = *options.samples;
    return mc;
}

// ---------------------------------------------------------------- optimize

CommandResult run_optimize_chain_impl(const AnalysisConfig& config) {
    if (!config.chain || !config.targets) {
        throw config_error("", "optimize-chain needs 'chain' and 'targets' sections");
    }
    const afe::ChainFoM& chain = *config.chain;
    const ChainTargetsConfig& t = *config.targets;

    chainopt::CascadeTargets targets;
    targets.noise_factor = t.noise_factor;
    targets.iip3_voltage_sq = t.iip3_voltage_sq;
    targets.constants = config.constants;

    const double closed = afe::optimal_power_circuit_form(t.iip3_voltage_sq, t.noise_factor,
                                                          chain, config.constants);

    CsvBuilder csv("afescale.optimize_chain.v1",
                   {"gain_set", "gains_db", "closed_form_w", "optimizer_w", "relative_gap"});
    std::ostringstream report;
    report << "chain blocks: " << chain.blocks.size()
           << "  aggregate FoM: " << format_number(chain.aggregate_fom_w()) << " W\n";
    report << "closed-form minimum power: " << format_number(closed) << " W\n";

    std::vector<double> minima;
    for (std::size_t s = 0; s < t.gain_sets.size(); ++s) {
        const auto result = chainopt::optimize_allocation(targets, chain, t.gain_sets[s]);
        minima.push_back(result.power_w);
        const double gap = std::abs(result.power_w / closed - 1.0);
        std::string gains_db;
        for (std::size_t j = 0; j < t.gain_sets[s].size(); ++j) {
            if (j > 0) gains_db += ';';
            gains_db += fmt("%.4g", 10.0 * std::log10(t.gain_sets[s][j]));
        }
        csv.add_row({std::to_string(s), gains_db, format_number(closed),
                     format_number(result.power_w), format_number(gap)});
        report << "gain set " << s << " [" << gains_db
               << "] dB: optimizer " << fmt("%.8g", result.power_w) << " W, gap "
               << fmt("%.3g", gap) << "\n";
    }
    if (minima.size() >= 2) {
        double spread = 0.0;
        for (std::size_t a = 0; a < minima.size(); ++a) {
            for (std::size_t b = a + 1; b < minima.size(); ++b) {
                spread = std::max(spread, std::abs(minima[a] / minima[b] - 1.0));
            }
        }
        report << "gain-independence spread: " << fmt("%.3g", spread) << "\n";
    }

    CommandResult result;
    result.report = report.str();
    result.files.push_back({"optimize_chain.csv", csv.str()});
    return result;
}

// -------------------------------------------------------------------- scale

CommandResult run_scale_impl(const AnalysisConfig& config) {
    CommandResult result;
    std::ostringstream report;

    if (config.scenario && config.scenario_post) {
        const afe::ChainFoM chain =
            config.chain ? *config.chain : afe::ChainFoM{{{"block", 1e-12}}};
        const scaling::ScenarioPair pair{*config.scenario, *config.scenario_post};
        const auto r = scaling::power_scaling_general(pair, chain, config.constants);

        CsvBuilder csv("afescale.scale_pair.v1",
                       {"sigma_b", "sigma_sndr", "sigma_s", "sigma_i", "phi", "delta", "sigma_p",
                        "sigma_p_db", "ideal_sigma_p", "pre_noise_factor", "post_noise_factor"});
        csv.add_row({format_number(r.bandwidth_ratio), format_number(r.sndr_ratio),
                     format_number(r.signal_ratio), format_number(r.interference_ratio),
                     format_number(r.phi), format_number(r.delta_factor),
                     format_number(r.power_ratio),
                     format_number(10.0 * std::log10(r.power_ratio)),
                     format_number(r.ideal_power_ratio), format_number(r.pre_noise_factor),
                     format_number(r.post_noise_factor)});
        result.files.push_back({"scale_pair.csv", csv.str()});

        report << "scenario-pair power scaling\n";
        report << "  sigma_B=" << format_number(r.bandwidth_ratio)
               << " sigma_SNDR=" << format_number(r.sndr_ratio)
               << " sigma_S=" << format_number(r.signal_ratio)
               << " sigma_I=" << format_number(r.interference_ratio) << "\n";
        report << "  phi=" << fmt("%.6g", r.phi) << " delta=" << fmt("%.6g", r.delta_factor)
               << "\n";
        report << "  sigma_P=" << fmt("%.6g", r.power_ratio) << " ("
               << fmt("%+.2f", 10.0 * std::log10(r.power_ratio)) << " dB, ideal-slope value "
               << fmt("%.6g", r.ideal_power_ratio) << ")\n";
        for (const auto& [name, ok] : r.checks) {
            report << "  check " << (ok ? "ok " : "VIOLATED ") << name << "\n";
        }
    } else if (config.scale_law) {
        const ScaleLawConfig& law = *config.scale_law;
        const double sigma_p =
            scaling::law_power_scaling(law.law, law.sigma, law.pre_noise_factor);
        double phi = 1.0;
        if (law.law == scaling::Law::bandwidth || law.law == scaling::Law::sndr) {
            phi = scaling::noise_factor_correction(law.pre_noise_factor, law.sigma);
        } else if (law.law == scaling::Law::signal) {
            phi = scaling::noise_factor_correction_signal(law.pre_noise_factor, law.sigma);
        }
        const double ideal = std::pow(law.sigma, scaling::law_slope(law.law));

        CsvBuilder csv("afescale.scale_law.v1",
                       {"law", "sigma", "sigma_db", "f1", "phi", "sigma_p", "sigma_p_db",
                        "ideal_sigma_p"});
        csv.add_row({scaling::law_name(law.law), format_number(law.sigma),
                     format_number(10.0 * std::log10(law.sigma)),
                     format_number(law.pre_noise_factor), format_number(phi),
                     format_number(sigma_p), format_number(10.0 * std::log10(sigma_p)),
                     format_number(ideal)});
        result.files.push_back({"scale_law.csv", csv.str()});

        report << "law " << scaling::law_name(law.law) << ": sigma="
               << fmt("%.6g", law.sigma) << " -> sigma_P=" << fmt("%.6g", sigma_p) << " ("
               << fmt("%+.2f", 10.0 * std::log10(sigma_p)) << " dB)\n";
        report << "  phi=" << fmt("%.6g", phi) << ", ideal-slope value " << fmt("%.6g", ideal)
               << " (laws are at-least bounds; phi-corrected value is reported)\n";
    } else {
        throw config_error(
            "", "scale needs either 'scenario' plus 'scenario_post' or a 'scale_law' section");
    }

    result.report = report.str();
    return result;
}

// ---------------------------------------------------------------------- qam

struct QamRow {
    unsigned m2;
    double p_e_2;
    double mu_db;
    double sigma_sndr;
    double sigma_p;
    double savings;
};

std::vector<QamRow> compute_qam_rows(const QamSweepConfig& cfg) {
    std::vector<QamRow> rows;
    const link::QamConfig pre{cfg.m_1, cfg.p_e_1, cfg.rho_1};
    for (double mu_db : cfg.mu_db_grid) {
        const auto mu = link::TuningRange::from_db(mu_db);
        for (unsigned m2 : cfg.m_2_grid) {
            const double rho2 = cfg.rho_1 * std::log2(double(m2)) / std::log2(double(cfg.m_1));
            for (double p2 : cfg.p_e_2_grid) {
                const link::QamConfig post{m2, p2, rho2};
                QamRow row;
                row.m2 = m2;
                row.p_e_2 = p2;
                row.mu_db = mu_db;
                row.sigma_sndr = link::sndr_scaling_qam(pre, post);
                row.sigma_p = link::achievable_power_scaling(row.sigma_sndr, mu);
                row.savings = link::savings_percent(row.sigma_p);
                rows.push_back(row);
            }
        }
    }
    return rows;
}

CommandResult run_qam_impl(const AnalysisConfig& config, const CommandOptions& options) {
    if (!config.qam) throw config_error("", "qam needs a 'qam' section");
    const QamSweepConfig& cfg = *config.qam;
    const auto rows = compute_qam_rows(cfg);

    CsvBuilder csv("afescale.qam.v1", {"m1", "m2", "p_e_1", "p_e_2", "mu_db", "sigma_sndr",
                                       "sigma_p", "savings_pct"});
    for (const auto& row : rows) {
        csv.add_row({std::to_string(cfg.m_1), std::to_string(row.m2), format_number(cfg.p_e_1),
                     format_number(row.p_e_2), format_number(row.mu_db),
                     format_number(row.sigma_sndr), format_number(row.sigma_p),
                     format_number(row.savings)});
    }

    CommandResult result;
    result.files.push_back({"qam.csv", csv.str()});
    std::ostringstream report;
    report << "uncoded QAM sweep from M=" << cfg.m_1 << ", Pe=" << format_number(cfg.p_e_1)
           << ": " << rows.size() << " rows\n";

    if (options.with_plot) {
        std::vector<PlotSeries> series;
        for (double mu_db : cfg.mu_db_grid) {
            for (unsigned m2 : cfg.m_2_grid) {
                PlotSeries s;
                s.name = "M2=" + std::to_string(m2) + ", mu=" +
                         (std::isinf(mu_db) ? std::string("inf") : fmt("%g dB", mu_db));
                for (const auto& row : rows) {
                    if (row.m2 == m2 && row.mu_db == mu_db) {
                        s.x.push_back(row.p_e_2);
                        s.y.push_back(row.savings);
                    }
                }
                series.push_back(std::move(s));
            }
            if (!std::isinf(mu_db)) {
                PlotSeries cap;
                cap.name = "cap, mu=" + fmt("%g dB", mu_db);
                cap.dashed = true;
                const double level =
                    100.0 * (1.0 - std::pow(numerics::db_to_linear(mu_db), -1.5));
                cap.x = {cfg.p_e_2_grid.front(), cfg.p_e_2_grid.back()};
                cap.y = {level, level};
                series.push_back(std::move(cap));
            }
        }
        PlotOptions plot;
        plot.title = "Front-end power savings from QAM degradation";
        plot.x_label = "target symbol error probability";
        plot.y_label = "power savings [%]";
        plot.log_x = true;
        result.files.push_back({"qam.svg", render_line_chart(series, plot)});
    }

    result.report = report.str();
    return result;
}

// ------------------------------------------------------------------- coding

CommandResult run_coding_impl(const AnalysisConfig& config, const CommandOptions& options) {
    if (!config.codes) throw config_error("", "coding needs a 'codes' section");
    const CodingConfig& cfg = *config.codes;
    const auto mu = link::TuningRange::from_db(cfg.mu_db);

    const auto rows = link::coded_receiver_report(cfg.uncoded_afe_power_w,
                                                  cfg.uncoded_bitrate_bps, cfg.entries, mu);

    CsvBuilder csv("afescale.coding.v1",
                   {"label", "r_c", "g_c_db", "sigma_sndr", "sigma_p", "afe_mw", "decoder_mw",
                    "total_mw", "efficiency_gbit_per_j", "afe_efficiency_gain"});
    std::ostringstream report;
    report << "receiver budget (tuning range "
           << (std::isinf(cfg.mu_db) ? std::string("inf") : fmt("%g dB", cfg.mu_db)) << ")\n";
    report << "  label                     afe_mW   dec_mW  total_mW  Gbit/J\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        double r_c = 1.0;
        double g_db = 0.0;
        double sigma_sndr = 1.0;
        double afe_gain = 1.0;
        if (i > 0) {
            const auto& code = cfg.entries[i - 1];
            r_c = code.code_rate;
            g_db = 10.0 * std::log10(code.coding_gain);
            sigma_sndr = link::coding_sndr_scaling(code);
            afe_gain = link::coded_afe_efficiency_gain(code, row.power_scaling);
        }
        csv.add_row({row.label, format_number(r_c), format_number(g_db),
                     format_number(sigma_sndr), format_number(row.power_scaling),
                     format_number(row.afe_power_w * 1e3),
                     format_number(row.decoder_power_w * 1e3),
                     format_number(row.total_power_w * 1e3),
                     format_number(row.energy_efficiency_bits_per_j * 1e-9),
                     format_number(afe_gain)});
        char line[160];
        std::snprintf(line, sizeof(line), "  %-24s %8.3f %8.3f %9.3f %7.3f\n", row.label.c_str(),
                      row.afe_power_w * 1e3, row.decoder_power_w * 1e3, row.total_power_w * 1e3,
                      row.energy_efficiency_bits_per_j * 1e-9);
        report << line;
    }

    CommandResult result;
    result.files.push_back({"coding.csv", csv.str()});

    if (cfg.sweep) {
        const CodingSweepConfig& sweep = *cfg.sweep;
        CsvBuilder sweep_csv("afescale.coding_sweep.v1",
                             {"r_c", "g_c_db", "mu_db", "sigma_p", "savings_pct"});
        std::vector<PlotSeries> series;
        for (double mu_db : sweep.mu_db_grid) {
            const auto sweep_mu = link::TuningRange::from_db(mu_db);
            for (double r_c : sweep.code_rates) {
                PlotSeries s;
                s.name = "r=" + fmt("%.3g", r_c) + ", mu=" +
                         (std::isinf(mu_db) ? std::string("inf") : fmt("%g dB", mu_db));
                for (double g_db = sweep.gain_db_min; g_db <= sweep.gain_db_max + 1e-9;
                     g_db += sweep.gain_db_step) {
                    link::CodedSystem code{"sweep", r_c, numerics::db_to_linear(g_db), 0.0,
                                           r_c * cfg.uncoded_bitrate_bps};
                    const double sigma_p = link::coding_power_scaling(code, sweep_mu);
                    const double savings = link::savings_percent(sigma_p);
                    sweep_csv.add_row({format_number(r_c), format_number(g_db),
                                       format_number(mu_db), format_number(sigma_p),
                                       format_number(savings)});
                    s.x.push_back(g_db);
                    s.y.push_back(savings);
                }
                series.push_back(std::move(s));
            }
            if (!std::isinf(mu_db)) {
                PlotSeries cap;
                cap.name = "cap, mu=" + fmt("%g dB", mu_db);
                cap.dashed = true;
                const double level =
                    100.0 * (1.0 - std::pow(numerics::db_to_linear(mu_db), -1.5));
                cap.x = {sweep.gain_db_min, sweep.gain_db_max};
                cap.y = {level, level};
                series.push_back(std::move(cap));
            }
        }
        result.files.push_back({"coding_sweep.csv", sweep_csv.str()});
        if (options.with_plot) {
            PlotOptions plot;
            plot.title = "Front-end power savings from error control coding";
            plot.x_label = "coding gain [dB]";
            plot.y_label = "power savings [%]";
            result.files.push_back({"coding.svg", render_line_chart(series, plot)});
        }
    }

    result.report = report.str();
    return result;
}

// ------------------------------------------------------------------- fading

struct FadingRow {
    double omega;
    double mu_db;
    envadapt::PolicyKind policy;
    double analytic;
    envadapt::MonteCarloEstimate mc;
};

std::vector<FadingRow> compute_fading_rows(const FadingConfig& cfg,
                                           const envadapt::MonteCarloConfig& base_mc) {
    std::vector<FadingRow> rows;
    std::uint64_t row_index = 0;
    for (double omega : cfg.omega_grid) {
        const auto model = envadapt::FadingModel::from_outage(cfg.link_budget_w, omega,
                                                              cfg.min_sndr, cfg.alpha_im3);
        for (double mu_db : cfg.mu_db_grid) {
            const auto mu = link::TuningRange::from_db(mu_db);
            for (envadapt::PolicyKind policy : cfg.policies) {
                FadingRow row;
                row.omega = omega;
                row.mu_db = mu_db;
                row.policy = policy;
                switch (policy) {
                    case envadapt::PolicyKind::fixed:
                        row.analytic = 1.0;
                        break;
                    case envadapt::PolicyKind::two_step:
                        row.analytic = envadapt::expected_scaling_two_step(model, mu);
                        break;
                    case envadapt::PolicyKind::continuous:
                        row.analytic = envadapt::expected_scaling_continuous(model, mu);
                        break;
                }
                envadapt::MonteCarloConfig mc = base_mc;
                mc.seed = base_mc.seed + 1000003ULL * row_index;
                row.mc = envadapt::monte_carlo_fading(model, {policy, mu}, mc);
                rows.push_back(row);
                ++row_index;
            }
        }
    }
    return rows;
}

CommandResult run_fading_impl(const AnalysisConfig& config, const CommandOptions& options) {
    if (!config.fading) throw config_error("", "fading needs a 'fading' section");
    const FadingConfig& cfg = *config.fading;
    const auto rows = compute_fading_rows(cfg, effective_mc(config, options));

    CsvBuilder csv("afescale.fading.v1", {"omega", "mu_db", "policy", "analytic_scaling",
                                          "mc_mean", "mc_ci_lo", "mc_ci_hi", "savings_pct"});
    for (const auto& row : rows) {
        csv.add_row({format_number(row.omega), format_number(row.mu_db),
                     envadapt::policy_name(row.policy), format_number(row.analytic),
                     format_number(row.mc.mean), format_number(row.mc.ci_low),
                     format_number(row.mc.ci_high),
                     format_number(link::savings_percent(row.analytic))});
    }

    CommandResult result;
    result.files.push_back({"fading.csv", csv.str()});
    std::ostringstream report;
    report << "fading-adaptive scaling: " << rows.size()
           << " rows (analytic bound + Monte Carlo of the bound)\n";

    if (options.with_plot) {
        std::vector<PlotSeries> series;
        for (double omega : cfg.omega_grid) {
            for (envadapt::PolicyKind policy : cfg.policies) {
                PlotSeries s;
                s.name = std::string(envadapt::policy_name(policy)) + ", outage=" +
                         fmt("%g", omega);
                s.dashed = policy == envadapt::PolicyKind::two_step;
                for (const auto& row : rows) {
                    if (row.omega == omega && row.policy == policy) {
                        s.x.push_back(row.mu_db);
                        s.y.push_back(link::savings_percent(row.analytic));
                    }
                }
                series.push_back(std::move(s));
            }
        }
        PlotOptions plot;
        plot.title = "Average power savings of fading-adaptive front ends";
        plot.x_label = "tuning range [dB]";
        plot.y_label = "average power savings [%]";
        result.files.push_back({"fading.svg", render_line_chart(series, plot)});
    }

    result.report = report.str();
    return result;
}

// ------------------------------------------------------------- interference

struct InterferenceRow {
    double delta;
    double mu_db;
    double scaling;
    double avg_afe_w;
    double with_sensor_w;
};

std::vector<InterferenceRow> compute_interference_rows(const InterferenceConfig& cfg) {
    std::vector<InterferenceRow> rows;
    for (double delta : cfg.delta_grid) {
        for (double mu_db : cfg.mu_db_grid) {
            envadapt::InterferenceModel model;
            model.worst_case_interferer_w = 1e-6;  // scale cancels in the expectation
            model.high_interference_p = delta;
            model.mu = link::TuningRange::from_db(mu_db);
            InterferenceRow row;
            row.delta = delta;
            row.mu_db = mu_db;
            row.scaling = envadapt::expected_scaling_interference(model);
            row.avg_afe_w = row.scaling * cfg.baseline_afe_power_w;
            row.with_sensor_w = envadapt::sensor_adjusted_power(row.avg_afe_w, cfg.sensor_power_w);
            rows.push_back(row);
        }
    }
    return rows;
}

CommandResult run_interference_impl(const AnalysisConfig& config, const CommandOptions& options) {
    if (!config.interference) throw config_error("", "interference needs an 'interference' section");
    const InterferenceConfig& cfg = *config.interference;
    const auto rows = compute_interference_rows(cfg);

    CsvBuilder csv("afescale.interference.v1",
                   {"delta", "mu_db", "expected_scaling", "savings_pct", "avg_afe_mw",
                    "with_sensor_mw", "net_savings_pct"});
    for (const auto& row : rows) {
        csv.add_row({format_number(row.delta), format_number(row.mu_db),
                     format_number(row.scaling),
                     format_number(link::savings_percent(row.scaling)),
                     format_number(row.avg_afe_w * 1e3), format_number(row.with_sensor_w * 1e3),
                     format_number(
                         link::savings_percent(row.with_sensor_w / cfg.baseline_afe_power_w))});
    }

    CommandResult result;
    result.files.push_back({"interference.csv", csv.str()});
    std::ostringstream report;
    report << "interference-adaptive scaling: " << rows.size() << " rows\n";

    if (options.with_plot) {
        std::vector<PlotSeries> series;
        const std::size_t stride = std::max<std::size_t>(1, cfg.delta_grid.size() / 6);
        for (std::size_t d = 0; d < cfg.delta_grid.size(); d += stride) {
            const double delta = cfg.delta_grid[d];
            PlotSeries s;
            s.name = "delta=" + fmt("%g", delta);
            for (const auto& row : rows) {
                if (row.delta == delta) {
                    s.x.push_back(row.mu_db);
                    s.y.push_back(link::savings_percent(row.scaling));
                }
            }
            series.push_back(std::move(s));
        }
        PlotOptions plot;
        plot.title = "Average power savings of interference-adaptive front ends";
        plot.x_label = "tuning range [dB]";
        plot.y_label = "average power savings [%]";
        result.files.push_back({"interference.svg", render_line_chart(series, plot)});
    }

    result.report = report.str();
    return result;
}

// ---------------------------------------------------------------- reproduce

struct Gate {
    std::ostringstream log;
    bool ok = true;

    void require(bool condition, const std::string& what) {
        log << (condition ? "  gate ok:   " : "  gate FAIL: ") << what << "\n";
        ok = ok && condition;
    }

    void within(double value, double reference, double rel_tol, const std::string& what) {
        const bool pass = std::abs(value - reference) <= rel_tol * std::abs(reference);
        log << (pass ? "  gate ok:   " : "  gate FAIL: ") << what << " = " << fmt("%.6g", value)
            << " vs " << fmt("%.6g", reference) << " (tol " << fmt("%.2g", rel_tol * 100.0)
            << "%)\n";
        ok = ok && pass;
    }
};

double parse_csv_number(const std::string& cell) { return std::stod(cell); }

std::vector<std::vector<std::string>> parse_csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cell += c;
                }
            } else if (c == '"' && cell.empty()) {
                quoted = true;
            } else if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += c;
            }
        }
        cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

CommandResult reproduce_table2(const AnalysisConfig& config, const CommandOptions& options) {
    CommandResult result = run_coding_impl(config, options);
    const auto mu = link::TuningRange::from_db(config.codes->mu_db);
    const auto rows = link::coded_receiver_report(config.codes->uncoded_afe_power_w,
                                                  config.codes->uncoded_bitrate_bps,
                                                  config.codes->entries, mu);
    Gate gate;
    gate.require(rows.size() == 3, "three budget rows (uncoded, convolutional, turbo)");
    if (rows.size() == 3) {
        gate.within(rows[0].energy_efficiency_bits_per_j * 1e-9, 0.76, 0.03,
                    "uncoded efficiency [Gbit/J]");
        gate.within(rows[1].afe_power_w * 1e3, 4.26, 0.03, "convolutional AFE power [mW]");
        gate.within(rows[1].total_power_w * 1e3, 4.82, 0.03, "convolutional total power [mW]");
        gate.within(rows[1].energy_efficiency_bits_per_j * 1e-9, 2.77, 0.03,
                    "convolutional efficiency [Gbit/J]");
        gate.within(rows[2].afe_power_w * 1e3, 0.82, 0.03, "turbo AFE power [mW]");
        gate.within(rows[2].total_power_w * 1e3, 9.12, 0.03, "turbo total power [mW]");
        gate.within(rows[2].energy_efficiency_bits_per_j * 1e-9, 0.96, 0.03,
                    "turbo efficiency [Gbit/J]");
    }
    result.report += gate.log.str();
    result.tolerance_ok = gate.ok;
    return result;
}

CommandResult reproduce_fig2(const AnalysisConfig& config, const CommandOptions& options) {
    CommandResult result = run_qam_impl(config, options);
    const auto rows = compute_qam_rows(*config.qam);
    Gate gate;
    bool caps_hold = true;
    for (const auto& row : rows) {
        const double cap =
            100.0 * (1.0 - std::pow(numerics::db_to_linear(row.mu_db), -1.5));
        caps_hold = caps_hold && row.savings <= cap + 1e-9;
    }
    gate.require(caps_hold, "savings never exceed the tuning-range cap");
    for (const auto& row : rows) {
        if (std::isinf(row.mu_db) && row.m2 == 16 && row.p_e_2 == 1e-6) {
            gate.within(row.savings, 88.382, 0.001, "64->16 QAM savings at fixed SER [%]");
        }
        if (std::isinf(row.mu_db) && row.m2 == 64 && row.p_e_2 == 1e-3) {
            gate.within(row.savings, 66.790, 0.001, "SER 1e-6 -> 1e-3 savings at fixed M [%]");
        }
    }
    result.report += gate.log.str();
    result.tolerance_ok = gate.ok;
    return result;
}

CommandResult reproduce_fig3(const AnalysisConfig& config, const CommandOptions& options) {
    CommandResult result = run_coding_impl(config, options);
    const auto mu = link::TuningRange::from_db(config.codes->mu_db);
    Gate gate;
    gate.require(config.codes->entries.size() == 2, "two bundled coded systems");
    if (config.codes->entries.size() == 2) {
        const double cc = link::coding_power_scaling(config.codes->entries[0], mu) *
                          config.codes->uncoded_afe_power_w;
        const double turbo = link::coding_power_scaling(config.codes->entries[1], mu) *
                             config.codes->uncoded_afe_power_w;
        gate.within(cc * 1e3, 4.26, 0.03, "convolutional relaxed AFE power [mW]");
        gate.within(turbo * 1e3, 0.82, 0.03, "turbo relaxed AFE power [mW]");
    }
    result.report += gate.log.str();
    result.tolerance_ok = gate.ok;
    return result;
}

CommandResult reproduce_fig5a(const AnalysisConfig& config, const CommandOptions& options) {
    CommandResult result = run_fading_impl(config, options);
    const auto rows = compute_fading_rows(*config.fading, effective_mc(config, options));
    Gate gate;
    // Bonferroni-style widening: the per-row interval level is chosen so the
    // whole grid holds jointly at the configured confidence. A rule-of-three
    // term covers branch events too rare to appear in the sample at all
    // (zero observed variance, nonzero analytic weight).
    const double alpha = (1.0 - config.monte_carlo.confidence) /
                         (2.0 * static_cast<double>(rows.size()));
    const double z = numerics::q_inverse(alpha);
    bool all_within = true;
    double worst = 0.0;
    for (const auto& row : rows) {
        const double rare_event_allowance =
            -std::log(alpha) / static_cast<double>(row.mc.samples);
        const double slack = z * row.mc.std_error + rare_event_allowance;
        const double gap = std::abs(row.mc.mean - row.analytic);
        all_within = all_within && gap <= slack;
        if (row.mc.std_error > 0.0) {
            worst = std::max(worst, gap / row.mc.std_error);
        }
    }
    gate.require(all_within, "Monte Carlo matches the closed forms across the grid (worst " +
                                 fmt("%.2f", worst) + " sigma, allowed " + fmt("%.2f", z) + ")");
    result.report += gate.log.str();
    result.tolerance_ok = gate.ok;
    return result;
}

CommandResult reproduce_fig5b(const AnalysisConfig& config, const CommandOptions& options) {
    CommandResult result = run_interference_impl(config, options);
    Gate gate;
    // Round-trip the emitted CSV and re-evaluate the closed form per row.
    const auto parsed = parse_csv_rows(result.files.front().content);
    bool all_match = parsed.size() > 1;
    for (std::size_t i = 1; i < parsed.size(); ++i) {
        const double delta = parse_csv_number(parsed[i][0]);
        const double mu_db = parsed[i][1] == "inf" ? std::numeric_limits<double>::infinity()
                                                   : parse_csv_number(parsed[i][1]);
        const double stored = parse_csv_number(parsed[i][2]);
        envadapt::InterferenceModel model;
        model.worst_case_interferer_w = 1e-6;
        model.high_interference_p = delta;
        model.mu = link::TuningRange::from_db(mu_db);
        const double recomputed = envadapt::expected_scaling_interference(model);
        all_match = all_match && std::abs(stored - recomputed) <= 1e-12 * std::max(1.0, recomputed);
    }
    gate.require(all_match, "CSV grid round-trips against the closed form to 1e-12");
    result.report += gate.log.str();
    result.tolerance_ok = gate.ok;
    return result;
}

} // namespace

CommandResult run_optimize_chain(const AnalysisConfig& config) {
    return run_optimize_chain_impl(config);
}

CommandResult run_scale(const AnalysisConfig& config) { return run_scale_impl(config); }

CommandResult run_qam(const AnalysisConfig& config, const CommandOptions& options) {
    return run_qam_impl(config, options);
}

CommandResult run_coding(const AnalysisConfig& config, const CommandOptions& options) {
    return run_coding_impl(config, options);
}

CommandResult run_fading(const AnalysisConfig& config, const CommandOptions& options) {
    return run_fading_impl(config, options);
}

CommandResult run_interference(const AnalysisConfig& config, const CommandOptions& options) {
    return run_interference_impl(config, options);
}

CommandResult run_reproduce(const std::string& target,
                            const std::optional<AnalysisConfig>& config_override,
                            const CommandOptions& options) {
    const AnalysisConfig config =
        config_override ? *config_override
                        : parse_config(bundled_reproduce_config(target), "builtin:" + target);
    CommandResult result;
    if (target == "table2") {
        result = reproduce_table2(config, options);
    } else if (target == "fig2") {
        result = reproduce_fig2(config, options);
    } else if (target == "fig3") {
        result = reproduce_fig3(config, options);
    } else if (target == "fig5a") {
        result = reproduce_fig5a(config, options);
    } else if (target == "fig5b") {
        result = reproduce_fig5b(config, options);
    } else {
        throw config_error("reproduce", "unknown target '" + target + "'");
    }
    // Prefix outputs with the target name so several targets can share a directory.
    for (auto& file : result.files) {
        file.name = target + "_" + file.name;
    }
    return result;
}

void write_outputs(const CommandResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    for (const auto& file : result.files) {
        write_file_atomic((fs::path(out_dir) / file.name).string(), file.content);
    }
}

} // namespace afescale::app
