// SPDX-License-Identifier: Apache-2.0
#include "afescale/link_strategies.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "afescale/numerics.hpp"

namespace afescale::link {

namespace {
void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}

// Exact coefficient behind the rounded 1.66 in the tail-bound form,
// 1/log10(4): from Q(x) <= exp(-x^2/2) applied to Q^-1(Pe/4).
constexpr double kExactTailCoefficient = 1.6609640474436811739;
} // namespace

TuningRange TuningRange::from_db(double mu_db) {
    TuningRange range;
    range.factor = numerics::db_to_linear(mu_db);
    range.validate();
    return range;
}

void TuningRange::validate() const {
    if (!(factor >= 1.0)) throw std::domain_error("tuning range must be >= 1");
}

bool is_square_qam(unsigned m) {
    if (m < 4 || !std::has_single_bit(m)) return false;
    return std::countr_zero(m) % 2 == 0;
}

void QamConfig::validate() const {
    if (!is_square_qam(constellation)) {
        throw std::domain_error("constellation must be square M-QAM (M = 4^k): got M = " +
                                std::to_string(constellation));
    }
    if (!(symbol_error_p > 0.0) || !(symbol_error_p < 1.0)) {
        throw std::domain_error("symbol error probability must lie in (0, 1)");
    }
    require_positive(spectral_efficiency, "spectral efficiency");
}

void CodedSystem::validate() const {
    if (!(code_rate > 0.0) || !(code_rate <= 1.0)) {
        throw std::domain_error("code rate must lie in (0, 1]");
    }
    if (!(coding_gain >= 1.0)) {
        throw std::domain_error("coding gain must be >= 1 for a properly designed code");
    }
    if (!(decoder_power_w >= 0.0)) throw std::domain_error("decoder power must be >= 0");
    require_positive(info_bitrate_bps, "information bitrate");
}

double required_sndr_qam(const QamConfig& cfg) {
    cfg.validate();
    const double m = static_cast<double>(cfg.constellation);
    const double q = numerics::q_inverse(cfg.symbol_error_p / 4.0);
    return cfg.spectral_efficiency * (m - 1.0) / (3.0 * std::log2(m)) * q * q;
}

double sndr_scaling_qam(const QamConfig& pre, const QamConfig& post) {
    pre.validate();
    post.validate();
    const double q_pre = numerics::q_inverse(pre.symbol_error_p / 4.0);
    const double q_post = numerics::q_inverse(post.symbol_error_p / 4.0);
    const double ratio = q_post / q_pre;
    return (static_cast<double>(post.constellation) - 1.0) /
           (static_cast<double>(pre.constellation) - 1.0) * ratio * ratio;
}

double achievable_power_scaling(double sigma_sndr, TuningRange mu) {
    mu.validate();
    if (!(sigma_sndr > 0.0) || !(sigma_sndr <= 1.0)) {
        throw std::domain_error("SNDR scaling must lie in (0, 1] (relaxation direction)");
    }
    const double floor = std::pow(mu.factor, -1.5);
    return std::max(std::pow(sigma_sndr, 1.5), floor);
}

double power_scaling_qam(const QamConfig& pre, const QamConfig& post, TuningRange mu) {
    return achievable_power_scaling(sndr_scaling_qam(pre, post), mu);
}

double power_scaling_constellation(int delta_bits) {
    if (delta_bits < 0 || delta_bits % 2 != 0) {
        throw std::domain_error("bits/symbol difference must be even and >= 0 for square QAM");
    }
    return std::pow(2.0, -1.5 * static_cast<double>(delta_bits));
}

SerOrderScaling power_scaling_ser_orders(double omega1, double omega2) {
    if (!(omega1 < 0.0) || !(omega2 < 0.0)) {
        throw std::domain_error("SER orders of magnitude must be negative");
    }
    if (!(omega2 >= omega1)) {
        throw std::domain_error("degradation direction requires omega2 >= omega1");
    }
    SerOrderScaling scaling;
    scaling.asymptotic = std::pow(omega2 / omega1, 1.5);
    const auto intermediate = [&](double coeff) {
        return std::pow((1.0 - coeff * omega2) / (1.0 - coeff * omega1), 1.5);
    };
    scaling.intermediate_exact = intermediate(kExactTailCoefficient);
    scaling.intermediate_rounded = intermediate(1.66);
    return scaling;
}

double savings_percent(double sigma_p) {
    require_positive(sigma_p, "power scaling");
    return 100.0 * (1.0 - sigma_p);
}

double energy_efficiency(double bitrate_bps, double power_w) {
    require_positive(bitrate_bps, "bitrate");
    require_positive(power_w, "power");
    return bitrate_bps / power_w;
}

double qam_efficiency_ratio(unsigned m1, unsigned m2) {
    if (!is_square_qam(m1) || !is_square_qam(m2)) {
        throw std::domain_error("both constellations must be square M-QAM");
    }
    if (m2 > m1) {
        throw std::domain_error("efficiency ratio is stated for m2 <= m1");
    }
    const double ratio = (static_cast<double>(m1) - 1.0) / (static_cast<double>(m2) - 1.0);
    return std::pow(ratio, 1.5) * std::log2(static_cast<double>(m2)) /
           std::log2(static_cast<double>(m1));
}

double coding_sndr_scaling(const CodedSystem& code) {
    code.validate();
    return code.code_rate / code.coding_gain;
}

double coding_power_scaling(const CodedSystem& code, TuningRange mu) {
    return achievable_power_scaling(coding_sndr_scaling(code), mu);
}

double coded_afe_efficiency_gain(const CodedSystem& code, double sigma_p) {
    code.validate();
    require_positive(sigma_p, "power scaling");
    return code.code_rate / sigma_p;
}

std::vector<ReceiverBudgetRow> coded_receiver_report(double uncoded_afe_power_w,
                                                     double uncoded_bitrate_bps,
                                                     const std::vector<CodedSystem>& systems,
                                                     TuningRange mu) {
    require_positive(uncoded_afe_power_w, "uncoded front-end power");
    require_positive(uncoded_bitrate_bps, "uncoded bitrate");
    mu.validate();

    std::vector<ReceiverBudgetRow> rows;
    ReceiverBudgetRow uncoded;
    uncoded.label = "uncoded";
    uncoded.info_bitrate_bps = uncoded_bitrate_bps;
    uncoded.afe_power_w = uncoded_afe_power_w;
    uncoded.total_power_w = uncoded_afe_power_w;
    uncoded.energy_efficiency_bits_per_j = energy_efficiency(uncoded_bitrate_bps, uncoded_afe_power_w);
    rows.push_back(std::move(uncoded));

    for (const CodedSystem& code : systems) {
        ReceiverBudgetRow row;
        row.label = code.label;
        row.info_bitrate_bps = code.info_bitrate_bps;
        row.power_scaling = coding_power_scaling(code, mu);
        row.afe_power_w = row.power_scaling * uncoded_afe_power_w;
        row.decoder_power_w = code.decoder_power_w;
        row.total_power_w = row.afe_power_w + row.decoder_power_w;
        row.energy_efficiency_bits_per_j = energy_efficiency(code.info_bitrate_bps, row.total_power_w);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace afescale::link
