// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_SCALING_LAWS_HPP
#define AFESCALE_SCALING_LAWS_HPP

#include <string>
#include <utility>
#include <vector>

#include "afescale/afe_core.hpp"

namespace afescale::scaling {

enum class Law { bandwidth, sndr, signal, interference };

const char* law_name(Law law);

struct ScenarioPair {
    afe::Scenario pre;
    afe::Scenario post;
};

struct ScalingReport {
    double bandwidth_ratio = 1.0;     // post/pre bandwidth
    double sndr_ratio = 1.0;
    double signal_ratio = 1.0;
    double interference_ratio = 1.0;
    double power_ratio = 1.0;         // resulting front-end power ratio
    double phi = 1.0;                 // noise-factor correction
    double delta_factor = 1.0;        // distortion-ratio (alpha) correction
    double ideal_power_ratio = 1.0;   // slope-only value with phi = delta = 1
    double pre_noise_factor = 0.0;
    double post_noise_factor = 0.0;
    std::vector<std::pair<std::string, bool>> checks;  // constraint diagnostics
};

/// Power scaling between two arbitrary feasible scenarios. The product-form
/// result is cross-checked against the ratio of the two absolute optimal
/// powers computed independently.
ScalingReport power_scaling_general(const ScenarioPair& pair, const afe::ChainFoM& chain,
                                    const numerics::PhysicalConstants& constants);

/// Noise-factor correction for bandwidth or SNDR scaling:
/// (F1 - 1)/(F1 - sigma). Valid for 0 < sigma < F1.
double noise_factor_correction(double pre_noise_factor, double sigma);

/// Noise-factor correction for received-signal scaling:
/// (F1 - 1)/(F1 - 1/sigma_s). Valid for sigma_s > 1/F1.
double noise_factor_correction_signal(double pre_noise_factor, double sigma_signal);

// The four single-parameter laws. Each throws validity_error outside its
// validity range, naming the violated constraint.
double power_scaling_bandwidth(double sigma_bandwidth, double pre_noise_factor);
double power_scaling_sndr(double sigma_sndr, double pre_noise_factor);
double power_scaling_signal(double sigma_signal, double pre_noise_factor);
double power_scaling_interference(double sigma_interference);

double law_power_scaling(Law law, double sigma, double pre_noise_factor);

/// Ideal slope of a law in dB per dB (1 for bandwidth, 3/2 for SNDR and
/// interference, -3/2 for received signal).
double law_slope(Law law);

/// Post-scaling design requirements when a single fundamental parameter is
/// scaled by sigma. Throws infeasibility_error if the post design would need
/// a noise factor <= 1.
afe::FrontEndDesign derive_post_design(Law law, double sigma, const afe::FrontEndDesign& pre);

} // namespace afescale::scaling

#endif
