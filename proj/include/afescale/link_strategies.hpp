// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_LINK_STRATEGIES_HPP
#define AFESCALE_LINK_STRATEGIES_HPP

#include <limits>
#include <string>
#include <vector>

namespace afescale::link {

/// Maximum factor by which the front-end noise figure may be degraded
/// (IIP3 voltage squared shrinks by 1/sqrt(factor) over the same range).
/// An infinite factor models an unconstrained design.
struct TuningRange {
    double factor = std::numeric_limits<double>::infinity();

    static TuningRange unlimited() { return {}; }
    static TuningRange from_db(double mu_db);
    void validate() const;  // factor >= 1
};

/// Square M-QAM link configuration.
struct QamConfig {
    unsigned constellation = 0;        // M in {4, 16, 64, ...}
    double symbol_error_p = 0.0;       // target SER, in (0, 1)
    double spectral_efficiency = 0.0;  // bits/s/Hz

    void validate() const;  // rejects non-square constellations
};

struct CodedSystem {
    std::string label;
    double code_rate = 1.0;         // r_c in (0, 1]
    double coding_gain = 1.0;       // linear, at the reference BER
    double decoder_power_w = 0.0;
    double info_bitrate_bps = 0.0;

    void validate() const;
};

bool is_square_qam(unsigned m);

/// SNDR needed to reach the configured symbol error probability (tight
/// matched-filter bound for square M-QAM in Gaussian-dominated impairments).
double required_sndr_qam(const QamConfig& cfg);

/// SNDR ratio between two QAM configurations sharing one bandwidth.
double sndr_scaling_qam(const QamConfig& pre, const QamConfig& post);

/// Power scaling achievable for an SNDR relaxation under a limited tuning
/// range: max(sigma_sndr^(3/2), factor^(-3/2)).
double achievable_power_scaling(double sigma_sndr, TuningRange mu);

/// Achievable power scaling when constellation size and/or SER target are
/// degraded between two square-QAM configurations.
double power_scaling_qam(const QamConfig& pre, const QamConfig& post, TuningRange mu);

/// Power scaling when the bit/symbol count drops by delta_bits at fixed SER:
/// 2^(-1.5 delta_bits). delta_bits must be even and non-negative.
double power_scaling_constellation(int delta_bits);

struct SerOrderScaling {
    double asymptotic = 1.0;          // (omega2/omega1)^(3/2)
    double intermediate_exact = 1.0;  // Gaussian-tail bound, exact coefficient
    double intermediate_rounded = 1.0;  // same bound with the 1.66 coefficient
};

/// Power scaling versus the order of magnitude of the SER (omega = log10 SER,
/// both arguments negative, omega2 >= omega1).
SerOrderScaling power_scaling_ser_orders(double omega1, double omega2);

double savings_percent(double sigma_p);
double energy_efficiency(double bitrate_bps, double power_w);  // bits/J

/// Lower bound on the energy-efficiency gain when shrinking the square
/// constellation from m1 to m2 < m1 at fixed SER. Always >= 1.
double qam_efficiency_ratio(unsigned m1, unsigned m2);

double coding_sndr_scaling(const CodedSystem& code);  // r_c / g_c
double coding_power_scaling(const CodedSystem& code, TuningRange mu);

/// AFE-only efficiency ratio of the coded system over the uncoded one,
/// given the power scaling attained by the code. Exceeds 1 whenever g_c > 1.
double coded_afe_efficiency_gain(const CodedSystem& code, double sigma_p);

struct ReceiverBudgetRow {
    std::string label;
    double info_bitrate_bps = 0.0;
    double power_scaling = 1.0;  // applied to the uncoded front-end power
    double afe_power_w = 0.0;
    double decoder_power_w = 0.0;
    double total_power_w = 0.0;
    double energy_efficiency_bits_per_j = 0.0;
};

/// Receiver-total budget: uncoded baseline row followed by one row per coded
/// system with the relaxed front end and the decoder overhead added back.
std::vector<ReceiverBudgetRow> coded_receiver_report(double uncoded_afe_power_w,
                                                     double uncoded_bitrate_bps,
                                                     const std::vector<CodedSystem>& systems,
                                                     TuningRange mu);

} // namespace afescale::link

#endif
