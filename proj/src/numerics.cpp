// SPDX-License-Identifier: Apache-2.0
#include "afescale/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace afescale::numerics {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double gaussian_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
} // namespace

void PhysicalConstants::validate() const {
    if (!(boltzmann_k > 0.0) || !(temperature_k > 0.0) || !(input_resistance_ohm > 0.0)) {
        throw std::domain_error("physical constants must be strictly positive");
    }
}

double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

double linear_to_db(double ratio) {
    if (!(ratio > 0.0)) throw std::domain_error("linear_to_db requires a positive ratio");
    return 10.0 * std::log10(ratio);
}

double dbm_to_watt(double value_dbm) { return 1e-3 * db_to_linear(value_dbm); }

double watt_to_dbm(double power_w) {
    if (!(power_w > 0.0)) throw std::domain_error("watt_to_dbm requires positive power");
    return 10.0 * std::log10(power_w / 1e-3);
}

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double q_inverse(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("q_inverse requires a probability strictly inside (0, 1)");
    }
    // Bisection: Q is strictly decreasing, so Q(lo) > p > Q(hi) brackets the root.
    double lo = -40.0;
    double hi = 40.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (q_function(mid) > p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    // Two Newton steps sharpen the bracket midpoint; dQ/dx = -pdf(x).
    for (int i = 0; i < 2; ++i) {
        const double pdf = gaussian_pdf(x);
        if (pdf < std::numeric_limits<double>::min()) break;
        x += (q_function(x) - p) / pdf;
    }
    return x;
}

double upper_incomplete_gamma_half(double x) {
    if (!(x >= 0.0)) {
        throw std::domain_error("upper_incomplete_gamma_half requires x >= 0");
    }
    return kSqrtPi * std::erfc(std::sqrt(x));
}

} // namespace afescale::numerics
