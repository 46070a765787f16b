// SPDX-License-Identifier: Apache-2.0
#include "afescale/scaling_laws.hpp"

#include <cmath>
#include <stdexcept>

#include "afescale/errors.hpp"

namespace afescale::scaling {

namespace {
void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}
} // namespace

const char* law_name(Law law) {
    switch (law) {
        case Law::bandwidth: return "bandwidth";
        case Law::sndr: return "sndr";
        case Law::signal: return "signal";
        case Law::interference: return "interference";
    }
    return "unknown";
}

ScalingReport power_scaling_general(const ScenarioPair& pair, const afe::ChainFoM& chain,
                                    const numerics::PhysicalConstants& constants) {
    const afe::FrontEndDesign pre = afe::scenario_to_design(pair.pre, constants);
    const afe::FrontEndDesign post = afe::scenario_to_design(pair.post, constants);

    ScalingReport report;
    report.bandwidth_ratio = pair.post.bandwidth_hz / pair.pre.bandwidth_hz;
    report.sndr_ratio = pair.post.sndr / pair.pre.sndr;
    report.signal_ratio = pair.post.signal_power_w / pair.pre.signal_power_w;
    report.interference_ratio = pair.post.interferer_power_w / pair.pre.interferer_power_w;
    report.pre_noise_factor = pre.noise_factor;
    report.post_noise_factor = post.noise_factor;

    report.phi = (post.noise_factor / pre.noise_factor) *
                 (pre.noise_factor - 1.0) / (post.noise_factor - 1.0);
    const double alpha1 = pair.pre.alpha_im3;
    const double alpha2 = pair.post.alpha_im3;
    report.delta_factor =
        std::sqrt(alpha1 / alpha2) * std::pow((1.0 + alpha2) / (1.0 + alpha1), 1.5);

    report.ideal_power_ratio = report.bandwidth_ratio * std::pow(report.sndr_ratio, 1.5) *
                               std::pow(report.interference_ratio, 1.5) *
                               std::pow(report.signal_ratio, -1.5);
    report.power_ratio = report.phi * report.delta_factor * report.ideal_power_ratio;

    // Cross-check against the ratio of absolute optimal powers.
    const double p1 = afe::optimal_power_system_form(pre, pair.pre.interferer_power_w, chain);
    const double p2 = afe::optimal_power_system_form(post, pair.post.interferer_power_w, chain);
    const double direct_ratio = p2 / p1;
    if (std::abs(report.power_ratio / direct_ratio - 1.0) > 1e-9) {
        throw std::logic_error("power scaling: product form disagrees with absolute power ratio");
    }

    report.checks.emplace_back("pre-scaling front end feasible (F > 1)", true);
    report.checks.emplace_back("post-scaling front end feasible (F > 1)", true);
    report.checks.emplace_back("equal alpha_im3 across scenarios",
                               std::abs(alpha1 / alpha2 - 1.0) < 1e-12);
    return report;
}

double noise_factor_correction(double pre_noise_factor, double sigma) {
    if (!(pre_noise_factor > 1.0)) {
        throw infeasibility_error("pre-scaling noise factor must exceed 1");
    }
    require_positive(sigma, "scaling factor");
    if (!(sigma < pre_noise_factor)) {
        throw validity_error("sigma < F1",
                             "scaling factor must stay below the pre-scaling noise factor");
    }
    return (pre_noise_factor - 1.0) / (pre_noise_factor - sigma);
}

double noise_factor_correction_signal(double pre_noise_factor, double sigma_signal) {
    if (!(pre_noise_factor > 1.0)) {
        throw infeasibility_error("pre-scaling noise factor must exceed 1");
    }
    require_positive(sigma_signal, "scaling factor");
    if (!(sigma_signal > 1.0 / pre_noise_factor)) {
        throw validity_error("sigma_S > 1/F1",
                             "signal scaling must stay above the reciprocal noise factor");
    }
    return (pre_noise_factor - 1.0) / (pre_noise_factor - 1.0 / sigma_signal);
}

double power_scaling_bandwidth(double sigma_bandwidth, double pre_noise_factor) {
    return noise_factor_correction(pre_noise_factor, sigma_bandwidth) * sigma_bandwidth;
}

double power_scaling_sndr(double sigma_sndr, double pre_noise_factor) {
    return noise_factor_correction(pre_noise_factor, sigma_sndr) * std::pow(sigma_sndr, 1.5);
}

double power_scaling_signal(double sigma_signal, double pre_noise_factor) {
    return noise_factor_correction_signal(pre_noise_factor, sigma_signal) *
           std::pow(sigma_signal, -1.5);
}

double power_scaling_interference(double sigma_interference) {
    require_positive(sigma_interference, "scaling factor");
    return std::pow(sigma_interference, 1.5);
}

double law_power_scaling(Law law, double sigma, double pre_noise_factor) {
    switch (law) {
        case Law::bandwidth: return power_scaling_bandwidth(sigma, pre_noise_factor);
        case Law::sndr: return power_scaling_sndr(sigma, pre_noise_factor);
        case Law::signal: return power_scaling_signal(sigma, pre_noise_factor);
        case Law::interference: return power_scaling_interference(sigma);
    }
    throw std::logic_error("unreachable law");
}

double law_slope(Law law) {
    switch (law) {
        case Law::bandwidth: return 1.0;
        case Law::sndr: return 1.5;
        case Law::signal: return -1.5;
        case Law::interference: return 1.5;
    }
    throw std::logic_error("unreachable law");
}

afe::FrontEndDesign derive_post_design(Law law, double sigma, const afe::FrontEndDesign& pre) {
    require_positive(sigma, "scaling factor");
    if (!(pre.noise_factor > 1.0)) {
        throw infeasibility_error("pre-scaling design must have F > 1");
    }

    afe::FrontEndDesign post = pre;
    switch (law) {
        case Law::bandwidth:
            noise_factor_correction(pre.noise_factor, sigma);  // validity check
            post.bandwidth_hz = sigma * pre.bandwidth_hz;
            post.noise_factor = pre.noise_factor / sigma;
            break;
        case Law::sndr:
            noise_factor_correction(pre.noise_factor, sigma);
            post.noise_power_w = pre.noise_power_w / sigma;
            post.im3_power_w = pre.im3_power_w / sigma;
            post.noise_factor = pre.noise_factor / sigma;
            post.iip3_voltage_sq = std::sqrt(sigma) * pre.iip3_voltage_sq;
            break;
        case Law::signal:
            noise_factor_correction_signal(pre.noise_factor, sigma);
            post.noise_power_w = sigma * pre.noise_power_w;
            post.im3_power_w = sigma * pre.im3_power_w;
            post.noise_factor = sigma * pre.noise_factor;
            post.iip3_voltage_sq = pre.iip3_voltage_sq / std::sqrt(sigma);
            break;
        case Law::interference:
            post.iip3_voltage_sq = std::pow(sigma, 1.5) * pre.iip3_voltage_sq;
            break;
    }
    post.iip3_power_w =
        afe::iip3_power_from_voltage(post.iip3_voltage_sq, post.constants.input_resistance_ohm);

    if (!(post.noise_factor > 1.0)) {
        throw infeasibility_error("post-scaling design would need a noise factor <= 1");
    }
    return post;
}

} // namespace afescale::scaling
