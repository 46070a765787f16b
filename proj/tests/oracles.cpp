// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double m, double b,
                     double fa, double fm, double fb, double whole, double abs_tol, int depth,
                     int min_depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    // The first min_depth levels always split: an early error estimate from
    // three samples of a peaked integrand is not trustworthy.
    if (depth <= 0 || (min_depth <= 0 && std::abs(delta) <= 15.0 * abs_tol)) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, lm, m, fa, flm, fm, left, 0.5 * abs_tol, depth - 1,
                         min_depth - 1) +
           adaptive_step(f, m, rm, b, fm, frm, fb, right, 0.5 * abs_tol, depth - 1,
                         min_depth - 1);
}

double adaptive_simpson_abs(const std::function<double(double)>& f, double a, double b,
                            double abs_tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_step(f, a, m, b, fa, fm, fb, whole, abs_tol, 60, 6);
}

// Fixed 128-panel composite Simpson estimate; only used to set the scale of
// the absolute tolerance, so a peak between coarse samples cannot collapse it.
double composite_scale(const std::function<double(double)>& f, double a, double b) {
    constexpr int panels = 128;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return std::abs(sum * h / 3.0);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
    if (!(b > a)) throw std::domain_error("integration limits must satisfy a < b");
    const double scale = composite_scale(f, a, b);
    if (scale == 0.0) return 0.0;
    return adaptive_simpson_abs(f, a, b, scale * rel_tol);
}

double gaussian_upper_tail(double x) {
    const auto pdf = [](double t) {
        return 0.39894228040143267794 * std::exp(-0.5 * t * t);
    };
    // The integrand is negligible 60 units above the lower limit.
    return adaptive_simpson(pdf, x, x + 60.0, 1e-12);
}

double gaussian_upper_tail_inverse(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("p must lie in (0, 1)");
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gaussian_upper_tail(mid) > p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double upper_gamma_half(double x) {
    if (!(x >= 0.0)) throw std::domain_error("x must be >= 0");
    // Substituting t = u^2 removes the endpoint singularity:
    // integral of t^(-1/2) e^(-t) over [x, inf) = 2 integral of e^(-u^2).
    const auto integrand = [](double u) { return 2.0 * std::exp(-u * u); };
    const double start = std::sqrt(x);
    return adaptive_simpson(integrand, start, start + 40.0, 1e-12);
}

double continuous_fading_scaling(double phi_min, double mu) {
    const auto density = [](double phi) { return std::exp(-phi); };
    const double outage = adaptive_simpson(density, 0.0, phi_min, 1e-12);
    const auto tracking = [&](double phi) {
        return std::pow(phi / phi_min, -1.5) * std::exp(-phi);
    };
    // Truncate the tracking integral where e^(-phi) has decayed to nothing.
    const double upper = std::min(mu * phi_min, phi_min + 400.0);
    const double tracked =
        upper > phi_min ? adaptive_simpson(tracking, phi_min, upper, 1e-12) : 0.0;
    const double saturated = std::pow(mu, -1.5) * std::exp(-mu * phi_min);
    return outage + tracked + saturated;
}

} // namespace oracles
