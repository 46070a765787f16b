// SPDX-License-Identifier: Apache-2.0
#ifndef AFESCALE_TESTS_ORACLES_HPP
#define AFESCALE_TESTS_ORACLES_HPP

#include <functional>

// Independent numerical oracles used only by tests. These deliberately avoid
// the library implementations they are checking: tail probabilities and
// incomplete gamma values come from adaptive quadrature of the defining
// integrals, inverses from bisection against those integrals.
namespace oracles {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-12);

double gaussian_upper_tail(double x);
double gaussian_upper_tail_inverse(double p);
double upper_gamma_half(double x);

/// Expected power scaling of the continuously adapting front end evaluated
/// by quadrature of its defining piecewise integral.
double continuous_fading_scaling(double phi_min, double mu);

} // namespace oracles

#endif
