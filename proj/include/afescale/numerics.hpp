// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_NUMERICS_HPP
#define AFESCALE_NUMERICS_HPP

namespace afescale::numerics {

/// Physical constants shared by every analysis. Temperature and input
/// resistance carry engineering defaults and may be overridden per run.
struct PhysicalConstants {
    double boltzmann_k = 1.380649e-23;  // J/K
    double temperature_k = 290.0;
    double input_resistance_ohm = 50.0;

    void validate() const;  // throws std::domain_error on non-positive entries
};

double db_to_linear(double value_db);
double linear_to_db(double ratio);
double dbm_to_watt(double value_dbm);
double watt_to_dbm(double power_w);

/// Upper tail probability of a zero-mean unit-variance Gaussian.
double q_function(double x);

/// Inverse of q_function on (0, 1). Bisection bracket refined by Newton
/// steps; q_function(q_inverse(p)) matches p to better than 1e-10 relative.
double q_inverse(double p);

/// Upper incomplete gamma function of order one half,
/// integral of t^(-1/2) e^(-t) over [x, inf). Requires x >= 0.
double upper_incomplete_gamma_half(double x);

} // namespace afescale::numerics

#endif
