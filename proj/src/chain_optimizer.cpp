// SPDX-License-Identifier: Apache-2.0
#include "afescale/chain_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "afescale/errors.hpp"

namespace afescale::chainopt {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}

// Minimal Nelder-Mead on an unconstrained objective. Terminates when the
// relative spread of simplex values drops below tol or after max_iter moves.
struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, double step, double tol, int max_iter) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    NelderMeadResult result;
    for (result.iterations = 0; result.iterations < max_iter; ++result.iterations) {
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        if (vals[worst] - vals[best] <= tol * (std::abs(vals[best]) + 1e-300)) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t d = 0; d < n; ++d) {
                p[d] = centroid[d] + coeff * (pts[worst][d] - centroid[d]);
            }
            return p;
        };

        std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < vals[order[0]]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                pts[worst] = std::move(expanded);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(reflected);
                vals[worst] = fr;
            }
        } else if (fr < vals[second_worst]) {
            pts[worst] = std::move(reflected);
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
            const double fc = f(contracted);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = std::move(contracted);
                vals[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < n; ++d) {
                        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
                    }
                    vals[i] = f(pts[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    result.x = pts[best];
    result.value = vals[best];
    return result;
}

} // namespace

void ChainDesignVariables::validate() const {
    chain.validate();
    const std::size_t n = chain.blocks.size();
    if (noise_psd.size() != n || iip3_voltage_sq.size() != n || voltage_gain_sq.size() != n) {
        throw std::domain_error("allocation lists must match the chain length");
    }
    for (std::size_t j = 0; j < n; ++j) {
        require_positive(noise_psd[j], "block noise PSD");
        require_positive(iip3_voltage_sq[j], "block IIP3 voltage squared");
        require_positive(voltage_gain_sq[j], "block voltage gain squared");
    }
}

void CascadeTargets::validate() const {
    constants.validate();
    if (!(noise_factor > 1.0)) {
        throw infeasibility_error("cascade noise factor target must exceed 1");
    }
    require_positive(iip3_voltage_sq, "cascade IIP3 target");
}

std::vector<double> cumulative_gains(const std::vector<double>& voltage_gain_sq) {
    std::vector<double> cum(voltage_gain_sq.size());
    double acc = 1.0;
    for (std::size_t j = 0; j < voltage_gain_sq.size(); ++j) {
        cum[j] = acc;
        acc *= voltage_gain_sq[j];
    }
    return cum;
}

double cascade_noise_factor(const ChainDesignVariables& vars) {
    vars.validate();
    const std::vector<double> cum = cumulative_gains(vars.voltage_gain_sq);
    const double ref_psd = afe::source_noise_voltage_psd(vars.constants);
    double excess = 0.0;
    for (std::size_t j = 0; j < vars.noise_psd.size(); ++j) {
        excess += vars.noise_psd[j] / cum[j];
    }
    return 1.0 + excess / ref_psd;
}

double cascade_iip3(const ChainDesignVariables& vars) {
    vars.validate();
    const std::vector<double> cum = cumulative_gains(vars.voltage_gain_sq);
    double reciprocal = 0.0;
    for (std::size_t j = 0; j < vars.iip3_voltage_sq.size(); ++j) {
        reciprocal += cum[j] / vars.iip3_voltage_sq[j];
    }
    return 1.0 / reciprocal;
}

double total_chain_power(const ChainDesignVariables& vars) {
    vars.validate();
    double total = 0.0;
    for (std::size_t j = 0; j < vars.noise_psd.size(); ++j) {
        total += vars.chain.blocks[j].power_per_dr_w * vars.iip3_voltage_sq[j] / vars.noise_psd[j];
    }
    return total;
}

void project_onto_targets(ChainDesignVariables& vars, const CascadeTargets& targets) {
    vars.validate();
    targets.validate();
    const std::vector<double> cum = cumulative_gains(vars.voltage_gain_sq);

    const double excess_budget =
        (targets.noise_factor - 1.0) * afe::source_noise_voltage_psd(targets.constants);
    double excess = 0.0;
    for (std::size_t j = 0; j < vars.noise_psd.size(); ++j) excess += vars.noise_psd[j] / cum[j];
    const double noise_scale = excess_budget / excess;
    for (double& n : vars.noise_psd) n *= noise_scale;

    double reciprocal = 0.0;
    for (std::size_t j = 0; j < vars.iip3_voltage_sq.size(); ++j) {
        reciprocal += cum[j] / vars.iip3_voltage_sq[j];
    }
    const double linearity_scale = reciprocal * targets.iip3_voltage_sq;
    for (double& v : vars.iip3_voltage_sq) v *= linearity_scale;
}

OptimizeResult optimize_allocation(const CascadeTargets& targets, const afe::ChainFoM& chain,
                                   const std::vector<double>& voltage_gain_sq,
                                   const OptimizeOptions& opts) {
    targets.validate();
    chain.validate();
    const std::size_t n = chain.blocks.size();
    if (voltage_gain_sq.size() != n) {
        throw std::domain_error("gain list must match the chain length");
    }
    for (double g : voltage_gain_sq) require_positive(g, "block voltage gain squared");

    const std::vector<double> cum = cumulative_gains(voltage_gain_sq);
    const double noise_budget =
        (targets.noise_factor - 1.0) * afe::source_noise_voltage_psd(targets.constants);
    const double reciprocal_budget = 1.0 / targets.iip3_voltage_sq;

    auto make_vars = [&](const std::vector<double>& noise, const std::vector<double>& linearity) {
        ChainDesignVariables v;
        v.noise_psd = noise;
        v.iip3_voltage_sq = linearity;
        v.voltage_gain_sq = voltage_gain_sq;
        v.chain = chain;
        v.constants = targets.constants;
        return v;
    };

    if (n == 1) {
        // Both constraints pin the single block; there is nothing to search.
        OptimizeResult result;
        result.allocation = make_vars({noise_budget}, {targets.iip3_voltage_sq});
        result.power_w = total_chain_power(result.allocation);
        result.best_start = 0;
        return result;
    }

    // Free variables: log noise PSD and log IIP3 voltage squared of blocks
    // 2..N. Block 1 is eliminated through the two cascade constraints; a
    // point whose eliminated block would need a non-positive allocation is
    // pushed back by a graded penalty.
    auto expand = [&](const std::vector<double>& x, std::vector<double>& noise,
                      std::vector<double>& linearity) {
        noise.assign(n, 0.0);
        linearity.assign(n, 0.0);
        double noise_rest = 0.0;
        double reciprocal_rest = 0.0;
        for (std::size_t j = 1; j < n; ++j) {
            noise[j] = std::exp(x[j - 1]);
            linearity[j] = std::exp(x[n - 1 + j - 1]);
            noise_rest += noise[j] / cum[j];
            reciprocal_rest += cum[j] / linearity[j];
        }
        noise[0] = noise_budget - noise_rest;
        const double first_reciprocal = reciprocal_budget - reciprocal_rest;
        linearity[0] = first_reciprocal > 0.0 ? 1.0 / first_reciprocal : -1.0;
        return std::make_pair(noise[0], first_reciprocal);
    };

    double power_scale = 0.0;  // objective at the equal-shares point, set below
    auto objective = [&](const std::vector<double>& x) {
        std::vector<double> noise, linearity;
        const auto [first_noise, first_reciprocal] = expand(x, noise, linearity);
        if (first_noise <= 0.0 || first_reciprocal <= 0.0) {
            double violation = 0.0;
            if (first_noise <= 0.0) violation += 1.0 - first_noise / noise_budget;
            if (first_reciprocal <= 0.0) violation += 1.0 - first_reciprocal / reciprocal_budget;
            return power_scale * (1e6 + 1e6 * violation);
        }
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            total += chain.blocks[j].power_per_dr_w * linearity[j] / noise[j];
        }
        return total;
    };

    // Equal-shares allocation: feasible by construction, used as the penalty
    // scale and as a sanity fallback.
    std::vector<double> equal_x(2 * (n - 1));
    for (std::size_t j = 1; j < n; ++j) {
        equal_x[j - 1] = std::log(noise_budget / static_cast<double>(n) * cum[j]);
        equal_x[n - 1 + j - 1] =
            std::log(static_cast<double>(n) * cum[j] / reciprocal_budget);
    }
    power_scale = objective(equal_x);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_start = [&]() {
        // Random budget splits in raw allocation coordinates, not scaled by
        // the gain plan: gain-scaled starts would make every gain plan's
        // search an exact translate of the same trajectory, and the
        // gain-independence check needs genuinely distinct searches.
        std::vector<double> wn(n), wl(n);
        double sn = 0.0, sl = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            wn[j] = -std::log(1.0 - unit(rng));
            wl[j] = -std::log(1.0 - unit(rng));
            sn += wn[j];
            sl += wl[j];
        }
        std::vector<double> x(2 * (n - 1));
        for (std::size_t j = 1; j < n; ++j) {
            x[j - 1] = std::log(noise_budget * wn[j] / sn);
            x[n - 1 + j - 1] = std::log(1.0 / (reciprocal_budget * wl[j] / sl));
        }
        return x;
    };

    OptimizeResult best;
    best.power_w = std::numeric_limits<double>::infinity();
    bool any_converged = false;
    const int starts = std::max(1, opts.starts);
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x0 = s == 0 ? equal_x : random_start();
        NelderMeadResult run = nelder_mead(objective, x0, 0.5, opts.tolerance, opts.max_iterations);
        // Restart once from the found point with a fresh simplex; guards
        // against a prematurely collapsed simplex.
        NelderMeadResult polish =
            nelder_mead(objective, run.x, 0.05, opts.tolerance, opts.max_iterations);
        polish.iterations += run.iterations;
        polish.converged = polish.converged && run.converged;
        if (polish.value < best.power_w) {
            std::vector<double> noise, linearity;
            expand(polish.x, noise, linearity);
            best.allocation = make_vars(noise, linearity);
            best.power_w = polish.value;
            best.best_start = s;
            best.iterations = polish.iterations;
        }
        any_converged = any_converged || polish.converged;
    }

    if (!any_converged) {
        throw convergence_error("chain power optimization did not converge from any start");
    }
    if (!(best.power_w < power_scale * 1e6)) {
        throw infeasibility_error("chain power optimization found no feasible allocation");
    }
    return best;
}

GainIndependenceReport verify_gain_independence(const CascadeTargets& targets,
                                                const afe::ChainFoM& chain,
                                                const std::vector<std::vector<double>>& gain_sets,
                                                const OptimizeOptions& opts) {
    if (gain_sets.size() < 2) {
        throw std::domain_error("gain independence check needs at least two gain sets");
    }
    GainIndependenceReport report;
    for (const auto& gains : gain_sets) {
        OptimizeResult result = optimize_allocation(targets, chain, gains, opts);
        report.minima_w.push_back(result.power_w);
        report.allocations.push_back(std::move(result.allocation));
    }
    for (std::size_t a = 0; a < report.minima_w.size(); ++a) {
        for (std::size_t b = a + 1; b < report.minima_w.size(); ++b) {
            const double spread = std::abs(report.minima_w[a] / report.minima_w[b] - 1.0);
            report.max_relative_spread = std::max(report.max_relative_spread, spread);
        }
    }
    return report;
}

} // namespace afescale::chainopt
