// SPDX-License-Identifier: Apache-2.0
#include "afescale/env_adaptive.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "afescale/errors.hpp"
#include "afescale/numerics.hpp"

namespace afescale::envadapt {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) throw std::domain_error(std::string(what) + " must be > 0");
}

// Stateless mixing of (seed, block index) into a substream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (block + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// 53-bit uniform draw in [0, 1); avoids generate_canonical so the stream
// depends only on the mt19937_64 sequence fixed by the standard.
double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

constexpr std::size_t kBlockSize = 65536;

// Samples are partitioned into fixed blocks; block b draws from its own
// substream seeded by mix_seed(seed, b). Workers claim blocks through an
// atomic counter and deposit partial sums indexed by block; the final
// reduction walks blocks in index order. The estimate therefore depends
// only on (samples, seed), never on the worker count.
MonteCarloEstimate run_monte_carlo(const MonteCarloConfig& mc,
                                   const std::function<double(std::mt19937_64&)>& draw) {
    mc.validate();
    const std::size_t blocks = (mc.samples + kBlockSize - 1) / kBlockSize;
    std::vector<double> block_sum(blocks, 0.0);
    std::vector<double> block_sum_sq(blocks, 0.0);

    std::atomic<std::size_t> next_block{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t b = next_block.fetch_add(1);
            if (b >= blocks) break;
            const std::size_t begin = b * kBlockSize;
            const std::size_t end = std::min(begin + kBlockSize, mc.samples);
            std::mt19937_64 rng(mix_seed(mc.seed, b));
            double sum = 0.0;
            double sum_sq = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                const double value = draw(rng);
                sum += value;
                sum_sq += value * value;
            }
            block_sum[b] = sum;
            block_sum_sq[b] = sum_sq;
        }
    };

    const unsigned workers = std::max(1u, mc.workers);
    if (workers == 1 || blocks == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        sum += block_sum[b];
        sum_sq += block_sum_sq[b];
    }

    MonteCarloEstimate estimate;
    estimate.samples = mc.samples;
    const double n = static_cast<double>(mc.samples);
    estimate.mean = sum / n;
    double variance = 0.0;
    if (mc.samples > 1) {
        variance = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    }
    estimate.std_error = std::sqrt(variance / n);
    const double z = numerics::q_inverse((1.0 - mc.confidence) / 2.0);
    estimate.ci_low = estimate.mean - z * estimate.std_error;
    estimate.ci_high = estimate.mean + z * estimate.std_error;
    return estimate;
}

} // namespace

double min_fading_power_from_outage(double outage_probability) {
    if (!(outage_probability > 0.0) || !(outage_probability < 1.0)) {
        throw std::domain_error("outage probability must lie in (0, 1)");
    }
    return -std::log1p(-outage_probability);
}

double outage_from_min_fading_power(double min_fading_power) {
    if (!(min_fading_power > 0.0)) throw std::domain_error("phi_min must be > 0");
    return -std::expm1(-min_fading_power);
}

FadingModel FadingModel::from_outage(double link_budget_w, double outage_probability,
                                     double min_sndr, double alpha_im3) {
    FadingModel model;
    model.link_budget_w = link_budget_w;
    model.outage_probability = outage_probability;
    model.min_fading_power = min_fading_power_from_outage(outage_probability);
    model.min_sndr = min_sndr;
    model.alpha_im3 = alpha_im3;
    model.validate();
    return model;
}

void FadingModel::validate() const {
    require_positive(link_budget_w, "link budget");
    if (!(outage_probability > 0.0) || !(outage_probability < 1.0)) {
        throw std::domain_error("outage probability must lie in (0, 1)");
    }
    require_positive(min_fading_power, "phi_min");
    if (std::abs(outage_from_min_fading_power(min_fading_power) - outage_probability) > 1e-12) {
        throw std::domain_error("phi_min is inconsistent with the outage probability");
    }
    require_positive(min_sndr, "minimum SNDR");
    if (!(alpha_im3 >= 0.0)) throw std::domain_error("alpha_im3 must be >= 0");
}

const char* policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::fixed: return "fixed";
        case PolicyKind::two_step: return "two_step";
        case PolicyKind::continuous: return "continuous";
    }
    return "unknown";
}

double worst_case_noise(const FadingModel& model) {
    model.validate();
    return model.link_budget_w * model.min_fading_power /
           ((1.0 + model.alpha_im3) * model.min_sndr);
}

double noise_tuning_rule(double fading_power, const FadingModel& model,
                         const AdaptationPolicy& policy) {
    if (!(fading_power >= 0.0)) throw std::domain_error("fading power must be >= 0");
    policy.mu.validate();
    const double floor_noise = worst_case_noise(model);
    const double mu = policy.mu.factor;
    const double phi_min = model.min_fading_power;

    switch (policy.kind) {
        case PolicyKind::fixed:
            return floor_noise;
        case PolicyKind::two_step:
            return fading_power <= mu * phi_min ? floor_noise : mu * floor_noise;
        case PolicyKind::continuous:
            if (fading_power <= phi_min) return floor_noise;
            if (fading_power <= mu * phi_min) {
                return model.link_budget_w * fading_power /
                       ((1.0 + model.alpha_im3) * model.min_sndr);
            }
            return mu * floor_noise;
    }
    throw std::logic_error("unreachable policy");
}

double instantaneous_power_ratio(double fading_power, const FadingModel& model,
                                 const AdaptationPolicy& policy) {
    if (!(fading_power >= 0.0)) throw std::domain_error("fading power must be >= 0");
    policy.mu.validate();
    const double mu = policy.mu.factor;
    const double phi_min = model.min_fading_power;

    switch (policy.kind) {
        case PolicyKind::fixed:
            return 1.0;
        case PolicyKind::two_step:
            return fading_power <= mu * phi_min ? 1.0 : std::pow(mu, -1.5);
        case PolicyKind::continuous:
            if (fading_power <= phi_min) return 1.0;
            if (fading_power <= mu * phi_min) return std::pow(fading_power / phi_min, -1.5);
            return std::pow(mu, -1.5);
    }
    throw std::logic_error("unreachable policy");
}

double expected_scaling_continuous(const FadingModel& model, link::TuningRange mu) {
    model.validate();
    mu.validate();
    const double phi_min = model.min_fading_power;
    const double m = mu.factor;
    // An infinite tuning range falls out of the same expression: every
    // saturation term carries a factor that IEEE arithmetic sends to zero.
    const double tail = std::exp(-m * phi_min);
    const double tracked =
        2.0 * (phi_min * std::exp(-phi_min) *
                   (1.0 - std::exp((1.0 - m) * phi_min) / std::sqrt(m)) +
               std::pow(phi_min, 1.5) * (numerics::upper_incomplete_gamma_half(m * phi_min) -
                                         numerics::upper_incomplete_gamma_half(phi_min)));
    return 1.0 - std::exp(-phi_min) + tracked + std::pow(m, -1.5) * tail;
}

double expected_scaling_two_step(const FadingModel& model, link::TuningRange mu) {
    model.validate();
    mu.validate();
    const double m = mu.factor;
    return 1.0 - (1.0 - std::pow(m, -1.5)) * std::exp(-m * model.min_fading_power);
}

void MonteCarloConfig::validate() const {
    if (samples < 1) throw std::domain_error("Monte Carlo needs at least one sample");
    if (!(confidence > 0.0) || !(confidence < 1.0)) {
        throw std::domain_error("confidence level must lie in (0, 1)");
    }
}

MonteCarloEstimate monte_carlo_fading(const FadingModel& model, const AdaptationPolicy& policy,
                                      const MonteCarloConfig& mc) {
    model.validate();
    policy.mu.validate();
    return run_monte_carlo(mc, [&](std::mt19937_64& rng) {
        const double fading_power = -std::log1p(-uniform53(rng));  // exponential(1)
        return instantaneous_power_ratio(fading_power, model, policy);
    });
}

void InterferenceModel::validate() const {
    require_positive(worst_case_interferer_w, "worst-case interferer power");
    if (!(high_interference_p >= 0.0) || !(high_interference_p <= 1.0)) {
        throw std::domain_error("high-interference probability must lie in [0, 1]");
    }
    mu.validate();
}

double im3_ceiling(double worst_case_interferer_w, double worst_case_iip3_w) {
    require_positive(worst_case_interferer_w, "worst-case interferer power");
    require_positive(worst_case_iip3_w, "worst-case IIP3");
    const double cube =
        worst_case_interferer_w * worst_case_interferer_w * worst_case_interferer_w;
    return cube / (worst_case_iip3_w * worst_case_iip3_w);
}

double interference_policy(double interferer_power_w, const InterferenceModel& model,
                           double worst_case_iip3_w) {
    model.validate();
    require_positive(interferer_power_w, "interferer power");
    require_positive(worst_case_iip3_w, "worst-case IIP3");
    if (interferer_power_w > model.worst_case_interferer_w) {
        throw infeasibility_error(
            "blocker above the worst-case level is outside the adaptation model");
    }
    const double threshold =
        model.worst_case_interferer_w / std::cbrt(model.mu.factor);
    return interferer_power_w <= threshold ? worst_case_iip3_w / std::sqrt(model.mu.factor)
                                           : worst_case_iip3_w;
}

double expected_scaling_interference(const InterferenceModel& model) {
    model.validate();
    return model.high_interference_p +
           (1.0 - model.high_interference_p) / std::sqrt(model.mu.factor);
}

double sensor_adjusted_power(double average_afe_power_w, double sensor_power_w) {
    if (!(average_afe_power_w >= 0.0) || !(sensor_power_w >= 0.0)) {
        throw std::domain_error("powers must be >= 0");
    }
    return average_afe_power_w + sensor_power_w;
}

// Both samplers consume one (bin, position) draw pair per sample. The bin
// decision always comes from the first draw, so two samplers over the same
// stream select identical bin sequences and the estimated mean depends only
// on the bin probabilities, not on the within-bin distribution.
InterferenceSampler two_point_interference_sampler(const InterferenceModel& model) {
    model.validate();
    const double p_wc = model.worst_case_interferer_w;
    const double threshold = p_wc / std::cbrt(model.mu.factor);
    const double delta = model.high_interference_p;
    return [p_wc, threshold, delta](std::mt19937_64& rng) {
        const bool high = uniform53(rng) < delta;
        uniform53(rng);  // position draw, unused at the bin centers
        return high ? 0.5 * (threshold + p_wc) : 0.5 * threshold;
    };
}

InterferenceSampler uniform_bin_interference_sampler(const InterferenceModel& model) {
    model.validate();
    const double p_wc = model.worst_case_interferer_w;
    const double threshold = p_wc / std::cbrt(model.mu.factor);
    const double delta = model.high_interference_p;
    return [p_wc, threshold, delta](std::mt19937_64& rng) {
        const bool high = uniform53(rng) < delta;
        const double u = uniform53(rng);
        return high ? threshold + u * (p_wc - threshold) : u * threshold;
    };
}

MonteCarloEstimate monte_carlo_interference(const InterferenceModel& model,
                                            const InterferenceSampler& sampler,
                                            const MonteCarloConfig& mc) {
    model.validate();
    const double low_ratio = 1.0 / std::sqrt(model.mu.factor);
    const double threshold = model.worst_case_interferer_w / std::cbrt(model.mu.factor);
    return run_monte_carlo(mc, [&](std::mt19937_64& rng) {
        const double interferer = sampler(rng);
        return interferer <= threshold ? low_ratio : 1.0;
    });
}

} // namespace afescale::envadapt
