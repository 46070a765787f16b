// SPDX-License-Identifier: Apache-2.0
#include "afescale/afe_core.hpp"

#include <cmath>
#include <stdexcept>

#include "afescale/errors.hpp"

namespace afescale::afe {

namespace {
void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}
} // namespace

double ChainFoM::aggregate_fom_w() const { return aggregate_fom(blocks); }

void ChainFoM::validate() const {
    if (blocks.empty()) throw std::domain_error("chain must contain at least one block");
    for (const auto& b : blocks) require_positive(b.power_per_dr_w, "block figure of merit");
}

void Scenario::validate() const {
    require_positive(sndr, "sndr");
    require_positive(bandwidth_hz, "bandwidth");
    require_positive(signal_power_w, "signal power");
    require_positive(interferer_power_w, "interferer power");
    require_positive(alpha_im3, "alpha_im3");
}

double source_noise_voltage_psd(const PhysicalConstants& constants) {
    constants.validate();
    return constants.boltzmann_k * constants.temperature_k * constants.input_resistance_ohm;
}

double dynamic_range(double iip3_voltage_sq, double noise_psd) {
    require_positive(iip3_voltage_sq, "IIP3 voltage squared");
    require_positive(noise_psd, "noise PSD");
    return iip3_voltage_sq / noise_psd;
}

double block_power(const BlockFoM& fom, double dr) {
    require_positive(fom.power_per_dr_w, "block figure of merit");
    require_positive(dr, "dynamic range");
    return fom.power_per_dr_w * dr;
}

double aggregate_fom(const std::vector<BlockFoM>& blocks) {
    if (blocks.empty()) throw std::domain_error("aggregate_fom requires a non-empty chain");
    double sum_cbrt = 0.0;
    for (const auto& b : blocks) {
        require_positive(b.power_per_dr_w, "block figure of merit");
        sum_cbrt += std::cbrt(b.power_per_dr_w);
    }
    return sum_cbrt * sum_cbrt * sum_cbrt;
}

double optimal_power_circuit_form(double iip3_voltage_sq, double noise_factor,
                                  const ChainFoM& chain, const PhysicalConstants& constants) {
    require_positive(iip3_voltage_sq, "IIP3 voltage squared");
    chain.validate();
    if (!(noise_factor > 1.0)) {
        throw infeasibility_error("noise factor must exceed 1 (front end with F <= 1 is unrealizable)");
    }
    const double denom = (noise_factor - 1.0) * constants.boltzmann_k * constants.temperature_k *
                         constants.input_resistance_ohm;
    return iip3_voltage_sq / denom * chain.aggregate_fom_w();
}

double noise_power(double noise_factor, double bandwidth_hz, const PhysicalConstants& constants) {
    constants.validate();
    require_positive(bandwidth_hz, "bandwidth");
    require_positive(noise_factor, "noise factor");
    return constants.boltzmann_k * constants.temperature_k * bandwidth_hz * noise_factor;
}

double noise_factor_from_power(double noise_power_w, double bandwidth_hz,
                               const PhysicalConstants& constants) {
    constants.validate();
    require_positive(noise_power_w, "noise power");
    require_positive(bandwidth_hz, "bandwidth");
    return noise_power_w / (constants.boltzmann_k * constants.temperature_k * bandwidth_hz);
}

double iip3_power_from_voltage(double iip3_voltage_sq, double input_resistance_ohm) {
    require_positive(iip3_voltage_sq, "IIP3 voltage squared");
    require_positive(input_resistance_ohm, "input resistance");
    return iip3_voltage_sq / input_resistance_ohm;
}

double iip3_voltage_from_power(double iip3_power_w, double input_resistance_ohm) {
    require_positive(iip3_power_w, "IIP3 power");
    require_positive(input_resistance_ohm, "input resistance");
    return iip3_power_w * input_resistance_ohm;
}

double im3_from_iip3(double iip3_power_w, double interferer_power_w) {
    require_positive(iip3_power_w, "IIP3 power");
    require_positive(interferer_power_w, "interferer power");
    const double cube = interferer_power_w * interferer_power_w * interferer_power_w;
    return cube / (iip3_power_w * iip3_power_w);
}

double iip3_from_im3(double im3_power_w, double interferer_power_w) {
    require_positive(im3_power_w, "IM3 power");
    require_positive(interferer_power_w, "interferer power");
    const double cube = interferer_power_w * interferer_power_w * interferer_power_w;
    return std::sqrt(cube / im3_power_w);
}

double sndr(double signal_power_w, double noise_power_w, double alpha_im3) {
    require_positive(signal_power_w, "signal power");
    require_positive(noise_power_w, "noise power");
    if (!(alpha_im3 >= 0.0)) throw std::domain_error("alpha_im3 must be >= 0");
    return signal_power_w / ((1.0 + alpha_im3) * noise_power_w);
}

double required_noise_power(double signal_power_w, double target_sndr, double alpha_im3) {
    require_positive(signal_power_w, "signal power");
    require_positive(target_sndr, "target sndr");
    if (!(alpha_im3 >= 0.0)) throw std::domain_error("alpha_im3 must be >= 0");
    return signal_power_w / ((1.0 + alpha_im3) * target_sndr);
}

FrontEndDesign scenario_to_design(const Scenario& scenario, const PhysicalConstants& constants) {
    scenario.validate();
    constants.validate();

    FrontEndDesign d;
    d.bandwidth_hz = scenario.bandwidth_hz;
    d.constants = constants;
    d.noise_power_w = required_noise_power(scenario.signal_power_w, scenario.sndr, scenario.alpha_im3);
    d.im3_power_w = scenario.alpha_im3 * d.noise_power_w;
    d.iip3_power_w = iip3_from_im3(d.im3_power_w, scenario.interferer_power_w);
    d.noise_factor = noise_factor_from_power(d.noise_power_w, scenario.bandwidth_hz, constants);
    d.iip3_voltage_sq = iip3_voltage_from_power(d.iip3_power_w, constants.input_resistance_ohm);

    if (!(d.noise_factor > 1.0)) {
        throw infeasibility_error("scenario demands sub-thermal input-referred noise (F_AFE <= 1)");
    }
    return d;
}

double optimal_power_system_form(const FrontEndDesign& design, double interferer_power_w,
                                 const ChainFoM& chain) {
    require_positive(interferer_power_w, "interferer power");
    chain.validate();
    if (!(design.noise_factor > 1.0)) {
        throw infeasibility_error("noise factor must exceed 1 (front end with F <= 1 is unrealizable)");
    }

    const double f = design.noise_factor;
    const double kappa = chain.aggregate_fom_w();
    const double lead = f / (f - 1.0) * design.bandwidth_hz * kappa;

    const double direct = lead * std::pow(interferer_power_w, 1.5) /
                          (design.noise_power_w * std::sqrt(design.im3_power_w));
    const double via_alpha = lead / std::sqrt(design.alpha_im3()) *
                             std::pow(interferer_power_w / design.noise_power_w, 1.5);

    if (std::abs(direct / via_alpha - 1.0) > 1e-9) {
        throw std::logic_error("system-form power: algebraic routes disagree (inconsistent design)");
    }
    return direct;
}

} // namespace afescale::afe
