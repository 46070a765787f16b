// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_CHAIN_OPTIMIZER_HPP
#define AFESCALE_CHAIN_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "afescale/afe_core.hpp"

namespace afescale::chainopt {

/// Per-block noise and linearity allocation for a chain with fixed gains.
/// Gains are voltage gains squared; referral of block j to the chain input
/// uses the cumulative gain of all preceding blocks.
struct ChainDesignVariables {
    std::vector<double> noise_psd;        // V^2/Hz, per block
    std::vector<double> iip3_voltage_sq;  // V^2, per block
    std::vector<double> voltage_gain_sq;  // fixed, per block
    afe::ChainFoM chain;
    numerics::PhysicalConstants constants;

    void validate() const;
};

/// Chain-level requirements the allocation must meet.
struct CascadeTargets {
    double noise_factor = 0.0;     // F_AFE target, > 1
    double iip3_voltage_sq = 0.0;  // V^2 target, > 0
    numerics::PhysicalConstants constants;

    void validate() const;
};

/// Cumulative voltage gain squared into each block (1 for the first block).
std::vector<double> cumulative_gains(const std::vector<double>& voltage_gain_sq);

double cascade_noise_factor(const ChainDesignVariables& vars);
double cascade_iip3(const ChainDesignVariables& vars);  // total V^2_IIP3
double total_chain_power(const ChainDesignVariables& vars);

/// Rescales the noise and linearity allocations (each by one common factor)
/// so the cascade meets the targets exactly. Both constraint families are
/// linear in the rescaled quantity, so the projection is exact.
void project_onto_targets(ChainDesignVariables& vars, const CascadeTargets& targets);

struct OptimizeOptions {
    int starts = 16;
    std::uint64_t seed = 0x5eedAFE5;
    int max_iterations = 10000;     // per start
    double tolerance = 1e-12;       // relative objective spread at convergence
};

struct OptimizeResult {
    ChainDesignVariables allocation;
    double power_w = 0.0;
    int best_start = -1;
    int iterations = 0;  // spent by the winning start
};

/// Minimizes total chain power over per-block allocations subject to the
/// cascade constraints. The first block's allocation is eliminated through
/// the two constraints; the remaining variables are searched in log space
/// by Nelder-Mead from multiple deterministic random starts.
OptimizeResult optimize_allocation(const CascadeTargets& targets, const afe::ChainFoM& chain,
                                   const std::vector<double>& voltage_gain_sq,
                                   const OptimizeOptions& opts = {});

struct GainIndependenceReport {
    std::vector<double> minima_w;                      // per gain set
    std::vector<ChainDesignVariables> allocations;     // per gain set
    double max_relative_spread = 0.0;                  // max pairwise |a/b - 1|
};

/// Re-optimizes one chain under several gain sets and reports the spread of
/// the attained minima. Requires at least two gain sets.
GainIndependenceReport verify_gain_independence(const CascadeTargets& targets,
                                                const afe::ChainFoM& chain,
                                                const std::vector<std::vector<double>>& gain_sets,
                                                const OptimizeOptions& opts = {});

} // namespace afescale::chainopt

#endif
