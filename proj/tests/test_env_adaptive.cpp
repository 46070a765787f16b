// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "afescale/afe_core.hpp"
#include "afescale/env_adaptive.hpp"
#include "afescale/errors.hpp"
#include "oracles.hpp"

using namespace afescale;

namespace {
envadapt::FadingModel example_fading() {
    return envadapt::FadingModel::from_outage(1e-9, 0.01, 100.0, 0.1);
}

envadapt::AdaptationPolicy policy(envadapt::PolicyKind kind, double mu_db) {
    return {kind, link::TuningRange::from_db(mu_db)};
}
} // namespace

TEST_CASE("outage and minimum fading power") {
    CHECK(envadapt::min_fading_power_from_outage(1.0 - std::exp(-1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(envadapt::min_fading_power_from_outage(0.01) ==
          doctest::Approx(0.01005034).epsilon(1e-6));
    for (double omega : {1e-4, 0.01, 0.3, 0.9}) {
        CHECK(envadapt::outage_from_min_fading_power(
                  envadapt::min_fading_power_from_outage(omega)) ==
              doctest::Approx(omega).epsilon(1e-14));
    }
    CHECK_THROWS_AS(envadapt::min_fading_power_from_outage(0.0), std::domain_error);
    CHECK_THROWS_AS(envadapt::min_fading_power_from_outage(1.0), std::domain_error);
}

TEST_CASE("worst-case noise level") {
    const auto unit = envadapt::FadingModel::from_outage(1.0, 1.0 - std::exp(-1.0), 1.0, 0.0);
    CHECK(envadapt::worst_case_noise(unit) == doctest::Approx(1.0).epsilon(1e-12));

    const auto model = example_fading();
    CHECK(envadapt::worst_case_noise(model) == doctest::Approx(9.13667e-14).epsilon(1e-5));

    auto doubled = model;
    doubled.min_sndr *= 2.0;
    CHECK(envadapt::worst_case_noise(doubled) ==
          doctest::Approx(0.5 * envadapt::worst_case_noise(model)).epsilon(1e-12));
}

TEST_CASE("noise tuning rules agree at the regime boundaries") {
    const auto model = example_fading();
    const double phi_min = model.min_fading_power;
    const double floor = envadapt::worst_case_noise(model);
    const double mu = 100.0;

    for (auto kind : {envadapt::PolicyKind::fixed, envadapt::PolicyKind::two_step,
                      envadapt::PolicyKind::continuous}) {
        CHECK(envadapt::noise_tuning_rule(phi_min, model, policy(kind, 20.0)) ==
              doctest::Approx(floor).epsilon(1e-12));
    }

    const auto continuous = policy(envadapt::PolicyKind::continuous, 20.0);
    const double at_edge = envadapt::noise_tuning_rule(mu * phi_min, model, continuous);
    CHECK(at_edge == doctest::Approx(mu * floor).epsilon(1e-9));
    CHECK(envadapt::noise_tuning_rule(mu * phi_min * 1.0001, model, continuous) ==
          doctest::Approx(mu * floor).epsilon(1e-12));

    const auto two_step = policy(envadapt::PolicyKind::two_step, 20.0);
    CHECK(envadapt::noise_tuning_rule(mu * phi_min, model, two_step) ==
          doctest::Approx(floor).epsilon(1e-12));
    CHECK(envadapt::noise_tuning_rule(mu * phi_min * 1.0001, model, two_step) ==
          doctest::Approx(mu * floor).epsilon(1e-12));
}

TEST_CASE("delivered SNDR never drops below the minimum outside outage") {
    const auto model = example_fading();
    const double phi_min = model.min_fading_power;
    for (auto kind : {envadapt::PolicyKind::fixed, envadapt::PolicyKind::two_step,
                      envadapt::PolicyKind::continuous}) {
        const auto pol = policy(kind, 20.0);
        for (double phi = phi_min; phi <= 1000.0 * phi_min; phi *= 1.7) {
            const double tuned_noise = envadapt::noise_tuning_rule(phi, model, pol);
            const double delivered =
                afe::sndr(model.link_budget_w * phi, tuned_noise, model.alpha_im3);
            CHECK(delivered >= model.min_sndr * (1.0 - 1e-12));
            if (kind == envadapt::PolicyKind::continuous && phi <= 100.0 * phi_min) {
                CHECK(delivered == doctest::Approx(model.min_sndr).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("instantaneous power ratio per regime") {
    const auto model = example_fading();
    const double phi_min = model.min_fading_power;
    const auto continuous = policy(envadapt::PolicyKind::continuous, 20.0);

    CHECK(envadapt::instantaneous_power_ratio(0.5 * phi_min, model, continuous) == 1.0);
    CHECK(envadapt::instantaneous_power_ratio(4.0 * phi_min, model, continuous) ==
          doctest::Approx(0.125).epsilon(1e-12));
    CHECK(envadapt::instantaneous_power_ratio(1e9 * phi_min, model, continuous) ==
          doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(envadapt::instantaneous_power_ratio(0.3, model,
                                              policy(envadapt::PolicyKind::fixed, 20.0)) == 1.0);
}

TEST_CASE("continuous expected scaling: closed form against quadrature") {
    const auto model = example_fading();
    const double value = envadapt::expected_scaling_continuous(model, link::TuningRange::from_db(20.0));
    CHECK(value == doctest::Approx(0.0269190).epsilon(1e-5));
    CHECK(value <= 0.05);
    CHECK(std::abs(value - oracles::continuous_fading_scaling(model.min_fading_power, 100.0)) <
          1e-9);

    // mu = 1 collapses every term.
    CHECK(envadapt::expected_scaling_continuous(model, link::TuningRange::from_db(0.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    for (double omega : {0.001, 0.01, 0.2, 0.5}) {
        const auto m = envadapt::FadingModel::from_outage(1e-9, omega, 50.0, 0.1);
        for (double mu_db : {3.0, 10.0, 17.0}) {
            const double mu = numerics::db_to_linear(mu_db);
            CHECK(envadapt::expected_scaling_continuous(m, link::TuningRange::from_db(mu_db)) ==
                  doctest::Approx(oracles::continuous_fading_scaling(m.min_fading_power, mu))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("two-step expected scaling") {
    const auto model = example_fading();
    CHECK(envadapt::expected_scaling_two_step(model, link::TuningRange::from_db(0.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(envadapt::expected_scaling_two_step(model, link::TuningRange::from_db(20.0)) ==
          doctest::Approx(0.6343337).epsilon(1e-6));
}

TEST_CASE("expected scalings order and limits") {
    // Continuous adaptation improves monotonically with the tuning range.
    // Two-step does not: its switch point mu*phi_min recedes as mu grows, so
    // the relaxed front end fires ever more rarely and the average creeps
    // back toward 1. Only the ordering and the unit bound hold for it.
    for (double omega : {0.001, 0.01, 0.1, 0.5, 0.9}) {
        const auto model = envadapt::FadingModel::from_outage(1e-9, omega, 100.0, 0.1);
        double previous_cont = 1.0 + 1e-12;
        for (double mu_db = 0.0; mu_db <= 30.0; mu_db += 2.0) {
            const auto mu = link::TuningRange::from_db(mu_db);
            const double cont = envadapt::expected_scaling_continuous(model, mu);
            const double two = envadapt::expected_scaling_two_step(model, mu);
            CHECK(cont <= two * (1.0 + 1e-12));
            CHECK(two <= 1.0 + 1e-12);
            CHECK(cont <= previous_cont + 1e-12);
            previous_cont = cont;
        }
    }
    // Large tuning ranges starve the two-step switch: the average returns
    // toward the fixed-design level.
    const auto model = envadapt::FadingModel::from_outage(1e-9, 0.5, 100.0, 0.1);
    const double moderate = envadapt::expected_scaling_two_step(model, link::TuningRange::from_db(3.0));
    const double extreme = envadapt::expected_scaling_two_step(model, link::TuningRange::from_db(30.0));
    CHECK(moderate < 1.0);
    CHECK(extreme > moderate);
}

TEST_CASE("fading Monte Carlo matches the closed forms") {
    const auto model = example_fading();
    envadapt::MonteCarloConfig mc;
    mc.samples = 1000000;
    mc.seed = 42;

    const auto fixed = envadapt::monte_carlo_fading(
        model, policy(envadapt::PolicyKind::fixed, 20.0), mc);
    CHECK(fixed.mean == 1.0);
    CHECK(fixed.std_error == 0.0);

    const auto two_step = envadapt::monte_carlo_fading(
        model, policy(envadapt::PolicyKind::two_step, 20.0), mc);
    const double two_expected =
        envadapt::expected_scaling_two_step(model, link::TuningRange::from_db(20.0));
    CHECK(std::abs(two_step.mean - two_expected) <= 3.0 * two_step.std_error);

    const auto continuous = envadapt::monte_carlo_fading(
        model, policy(envadapt::PolicyKind::continuous, 20.0), mc);
    const double cont_expected =
        envadapt::expected_scaling_continuous(model, link::TuningRange::from_db(20.0));
    CHECK(std::abs(continuous.mean - cont_expected) <= 3.0 * continuous.std_error);
}

TEST_CASE("fading Monte Carlo error shrinks at the statistical rate") {
    const auto model = example_fading();
    const auto pol = policy(envadapt::PolicyKind::two_step, 20.0);
    envadapt::MonteCarloConfig mc;
    mc.seed = 4;
    mc.samples = 10000;
    const auto small = envadapt::monte_carlo_fading(model, pol, mc);
    mc.samples = 1000000;
    const auto large = envadapt::monte_carlo_fading(model, pol, mc);
    // 100x the samples cuts the standard error by ~10x.
    CHECK(small.std_error / large.std_error == doctest::Approx(10.0).epsilon(0.2));
}

TEST_CASE("fading Monte Carlo is deterministic across worker counts") {
    const auto model = example_fading();
    const auto pol = policy(envadapt::PolicyKind::continuous, 14.0);
    envadapt::MonteCarloConfig mc;
    mc.samples = 300000;
    mc.seed = 9;
    mc.workers = 1;
    const auto single = envadapt::monte_carlo_fading(model, pol, mc);
    mc.workers = 4;
    const auto pooled = envadapt::monte_carlo_fading(model, pol, mc);
    CHECK(single.mean == pooled.mean);
    CHECK(single.std_error == pooled.std_error);

    const auto again = envadapt::monte_carlo_fading(model, pol, mc);
    CHECK(again.mean == pooled.mean);
}

TEST_CASE("IM3 ceiling") {
    CHECK(envadapt::im3_ceiling(1e-6, 1e-6) == doctest::Approx(1e-6).epsilon(1e-12));
    const double iip3 = std::sqrt(1e-3);  // makes the ceiling land on 1e-15
    CHECK(envadapt::im3_ceiling(1e-6, iip3) == doctest::Approx(1e-15).epsilon(1e-12));
    CHECK(envadapt::im3_ceiling(2e-6, 0.02) ==
          doctest::Approx(afe::im3_from_iip3(0.02, 2e-6)).epsilon(1e-15));
}

TEST_CASE("interference switching rule") {
    envadapt::InterferenceModel model;
    model.worst_case_interferer_w = 1e-6;
    model.high_interference_p = 0.1;
    model.mu = link::TuningRange::from_db(10.0);
    const double iip3_wc = 3.1622777e-2;
    const double threshold = 1e-6 / std::cbrt(10.0);
    CHECK(threshold == doctest::Approx(0.4641589e-6).epsilon(1e-7));

    // At the threshold the relaxed front end still meets the ceiling with
    // equality; just above it the high-linearity design takes over.
    const double low = envadapt::interference_policy(threshold, model, iip3_wc);
    CHECK(low == doctest::Approx(iip3_wc / std::sqrt(10.0)).epsilon(1e-12));
    const double ceiling = envadapt::im3_ceiling(1e-6, iip3_wc);
    CHECK(afe::im3_from_iip3(low, threshold) == doctest::Approx(ceiling).epsilon(1e-9));

    const double high = envadapt::interference_policy(1e-6, model, iip3_wc);
    CHECK(high == doctest::Approx(iip3_wc).epsilon(1e-15));
    CHECK(afe::im3_from_iip3(high, 1e-6) == doctest::Approx(ceiling).epsilon(1e-12));

    for (double p_i = 0.05e-6; p_i <= 1e-6; p_i += 0.05e-6) {
        const double selected = envadapt::interference_policy(p_i, model, iip3_wc);
        CHECK(afe::im3_from_iip3(selected, p_i) <= ceiling * (1.0 + 1e-9));
    }
    CHECK_THROWS_AS(envadapt::interference_policy(2e-6, model, iip3_wc), infeasibility_error);
}

TEST_CASE("expected interference scaling") {
    envadapt::InterferenceModel model;
    model.worst_case_interferer_w = 1e-6;
    model.high_interference_p = 0.1;
    model.mu = link::TuningRange::from_db(10.0);
    const double scaling = envadapt::expected_scaling_interference(model);
    CHECK(scaling == doctest::Approx(0.3846050).epsilon(1e-6));
    CHECK(scaling * 35e-3 == doctest::Approx(13.461e-3).epsilon(1e-4));
    CHECK(scaling * 35e-3 == doctest::Approx(14e-3).epsilon(0.05));

    model.high_interference_p = 1.0;
    CHECK(envadapt::expected_scaling_interference(model) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sensor overhead accounting") {
    const double adjusted = envadapt::sensor_adjusted_power(13.461e-3, 10e-3);
    CHECK(adjusted == doctest::Approx(23.461175e-3).epsilon(1e-6));
    CHECK(adjusted == doctest::Approx(24e-3).epsilon(0.05));
    CHECK(link::savings_percent(adjusted / 35e-3) == doctest::Approx(32.9680).epsilon(1e-4));
    CHECK(std::abs(link::savings_percent(adjusted / 35e-3) - 30.0) < 5.0);
    CHECK(envadapt::sensor_adjusted_power(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("interference Monte Carlo is distribution-insensitive within bins") {
    envadapt::InterferenceModel model;
    model.worst_case_interferer_w = 1e-6;
    model.high_interference_p = 0.1;
    model.mu = link::TuningRange::from_db(10.0);

    envadapt::MonteCarloConfig mc;
    mc.samples = 400000;
    mc.seed = 5;

    const auto centers = envadapt::monte_carlo_interference(
        model, envadapt::two_point_interference_sampler(model), mc);
    const auto uniform = envadapt::monte_carlo_interference(
        model, envadapt::uniform_bin_interference_sampler(model), mc);
    // Branch ratios depend only on the bin, and both samplers decide the bin
    // from the same draw: identical estimates, not merely close ones.
    CHECK(centers.mean == uniform.mean);

    const double expected = envadapt::expected_scaling_interference(model);
    CHECK(std::abs(centers.mean - expected) <= 3.0 * centers.std_error);

    envadapt::InterferenceModel always_low = model;
    always_low.high_interference_p = 0.0;
    const auto low = envadapt::monte_carlo_interference(
        always_low, envadapt::two_point_interference_sampler(always_low), mc);
    CHECK(low.mean == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-12));
    CHECK(low.std_error < 1e-8);  // constant samples modulo accumulation rounding
}
