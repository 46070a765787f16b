// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_AFE_CORE_HPP
#define AFESCALE_AFE_CORE_HPP

#include <string>
#include <vector>

#include "afescale/numerics.hpp"

namespace afescale::afe {

using numerics::PhysicalConstants;

/// Per-block figure of merit: power consumed per unit of dynamic range.
struct BlockFoM {
    std::string name;
    double power_per_dr_w = 0.0;  // P_C,j > 0
};

/// Ordered receiver chain described only by its block figures of merit.
struct ChainFoM {
    std::vector<BlockFoM> blocks;

    double aggregate_fom_w() const;  // (sum_j cbrt(P_C,j))^3
    void validate() const;
};

/// One application-environment case in fundamental system parameters.
struct Scenario {
    double sndr = 0.0;                // linear ratio
    double bandwidth_hz = 0.0;        // noise-equivalent bandwidth
    double signal_power_w = 0.0;      // wanted signal at the antenna
    double interferer_power_w = 0.0;  // total power of the two OOB tones
    double alpha_im3 = 0.0;           // p_IM3 / p_N design ratio

    void validate() const;
};

/// Front-end design requirements derived from a Scenario.
struct FrontEndDesign {
    double noise_power_w = 0.0;    // input-referred thermal noise p_N
    double im3_power_w = 0.0;      // in-band third-order distortion p_IM3
    double iip3_power_w = 0.0;     // p_IIP3
    double noise_factor = 0.0;     // F_AFE, strictly > 1
    double iip3_voltage_sq = 0.0;  // V^2
    double bandwidth_hz = 0.0;
    PhysicalConstants constants;

    double alpha_im3() const { return im3_power_w / noise_power_w; }
};

/// Reference source noise voltage PSD k*T*R_in [V^2/Hz]; the normalization
/// under which cascade noise factors and the closed-form optimum agree.
double source_noise_voltage_psd(const PhysicalConstants& constants);

double dynamic_range(double iip3_voltage_sq, double noise_psd);
double block_power(const BlockFoM& fom, double dr);
double aggregate_fom(const std::vector<BlockFoM>& blocks);

/// Minimum chain power in circuit parameters:
/// V^2_IIP3 / ((F - 1) k T R_in) * aggregate FoM. Requires F > 1.
double optimal_power_circuit_form(double iip3_voltage_sq, double noise_factor,
                                  const ChainFoM& chain, const PhysicalConstants& constants);

double noise_power(double noise_factor, double bandwidth_hz, const PhysicalConstants& constants);
double noise_factor_from_power(double noise_power_w, double bandwidth_hz,
                               const PhysicalConstants& constants);

double iip3_power_from_voltage(double iip3_voltage_sq, double input_resistance_ohm);
double iip3_voltage_from_power(double iip3_power_w, double input_resistance_ohm);

double im3_from_iip3(double iip3_power_w, double interferer_power_w);
double iip3_from_im3(double im3_power_w, double interferer_power_w);

double sndr(double signal_power_w, double noise_power_w, double alpha_im3);
double required_noise_power(double signal_power_w, double target_sndr, double alpha_im3);

/// Derives the mutually consistent design requirement set for a scenario.
/// Throws infeasibility_error when the scenario demands a noise factor <= 1.
FrontEndDesign scenario_to_design(const Scenario& scenario, const PhysicalConstants& constants);

/// Minimum chain power in system parameters. Evaluates both algebraic forms
/// (p_I^(3/2)/(p_N sqrt(p_IM3)) and alpha^(-1/2) (p_I/p_N)^(3/2)) and checks
/// they agree before returning.
double optimal_power_system_form(const FrontEndDesign& design, double interferer_power_w,
                                 const ChainFoM& chain);

} // namespace afescale::afe

#endif
