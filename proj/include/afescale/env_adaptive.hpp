// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_ENV_ADAPTIVE_HPP
#define AFESCALE_ENV_ADAPTIVE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

#include "afescale/link_strategies.hpp"

namespace afescale::envadapt {

/// Minimum acceptable normalized fading power for an outage probability.
double min_fading_power_from_outage(double outage_probability);  // -ln(1 - omega)
double outage_from_min_fading_power(double min_fading_power);    // 1 - exp(-phi_min)

/// Rayleigh-fading link model. The normalized fading power is unit-mean
/// exponential; `link_budget_w` collects transmit power, antenna gains,
/// pathloss and large-scale fading into one constant.
struct FadingModel {
    double link_budget_w = 0.0;       // beta
    double outage_probability = 0.0;  // Omega, in (0, 1)
    double min_fading_power = 0.0;    // phi_min, derived from Omega
    double min_sndr = 0.0;            // linear
    double alpha_im3 = 0.0;

    static FadingModel from_outage(double link_budget_w, double outage_probability,
                                   double min_sndr, double alpha_im3);
    void validate() const;
};

enum class PolicyKind { fixed, two_step, continuous };

const char* policy_name(PolicyKind kind);

struct AdaptationPolicy {
    PolicyKind kind = PolicyKind::fixed;
    link::TuningRange mu;
};

/// Worst-case thermal noise the front end must deliver at the outage edge.
double worst_case_noise(const FadingModel& model);

/// Input-referred noise the tuned front end delivers at fading power `phi`.
double noise_tuning_rule(double fading_power, const FadingModel& model,
                         const AdaptationPolicy& policy);

/// Upper bound on instantaneous power, normalized by the worst-case design.
double instantaneous_power_ratio(double fading_power, const FadingModel& model,
                                 const AdaptationPolicy& policy);

/// Closed-form expected power scaling of the continuously adapting front end.
double expected_scaling_continuous(const FadingModel& model, link::TuningRange mu);

/// Closed-form expected power scaling of the two-step front end.
double expected_scaling_two_step(const FadingModel& model, link::TuningRange mu);

struct MonteCarloConfig {
    std::size_t samples = 1000000;
    std::uint64_t seed = 1;
    double confidence = 0.99;  // two-sided confidence level of the interval
    unsigned workers = 1;

    void validate() const;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t samples = 0;
};

/// Ensemble average of the instantaneous power ratio over exponential fading
/// draws. Sample blocks own independent seeded substreams and partial sums
/// combine in block order, so the estimate is identical for any worker count.
MonteCarloEstimate monte_carlo_fading(const FadingModel& model, const AdaptationPolicy& policy,
                                      const MonteCarloConfig& mc);

/// Two-bin out-of-band blocker model: with probability `high_interference_p`
/// the blocker lies in the top bin that requires the worst-case front end.
struct InterferenceModel {
    double worst_case_interferer_w = 0.0;  // p_I,wc
    double high_interference_p = 0.0;      // in [0, 1]
    link::TuningRange mu;

    void validate() const;
};

/// Distortion ceiling every admissible IIP3 selection must respect.
double im3_ceiling(double worst_case_interferer_w, double worst_case_iip3_w);

/// IIP3 selected by the two-front-end switching rule for blocker power p_I.
/// Throws infeasibility_error for p_I above the worst-case model limit.
double interference_policy(double interferer_power_w, const InterferenceModel& model,
                           double worst_case_iip3_w);

/// Expected power scaling of the two-step interference-adaptive front end.
double expected_scaling_interference(const InterferenceModel& model);

/// Average adaptive power plus the blocker-sensor overhead.
double sensor_adjusted_power(double average_afe_power_w, double sensor_power_w);

using InterferenceSampler = std::function<double(std::mt19937_64&)>;

/// Samples the two bin centers with the model's bin probabilities.
InterferenceSampler two_point_interference_sampler(const InterferenceModel& model);
/// Samples uniformly within each bin with the model's bin probabilities.
InterferenceSampler uniform_bin_interference_sampler(const InterferenceModel& model);

/// Ensemble average of the two-branch power ratio under a blocker sampler.
MonteCarloEstimate monte_carlo_interference(const InterferenceModel& model,
                                            const InterferenceSampler& sampler,
                                            const MonteCarloConfig& mc);

} // namespace afescale::envadapt

#endif
