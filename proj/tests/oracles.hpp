#pragma once

// Reference implementations used only by tests. None of them call into the
// library; each computes the same quantity by a different route.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline double q(double v) {
    static const boost::math::normal_distribution<double> n01;
    return boost::math::cdf(boost::math::complement(n01, v));
}

inline double phi(double v) { return std::exp(-0.5 * v * v) / std::sqrt(2.0 * M_PI); }

// Two-piece normal density: scale `left` below zero, `right` above, glued at
// the mode. Its CDF is the upper envelope for (left, right) = (hi, lo) and the
// lower envelope for (lo, hi).
inline double two_piece_cdf(double t, double left, double right) {
    const double norm = 2.0 / (left + right);
    auto density = [&](double x) { return norm * (x < 0.0 ? phi(x / left) : phi(x / right)); };
    boost::math::quadrature::tanh_sinh<double> ts;
    if (t <= 0.0) return ts.integrate(density, -std::numeric_limits<double>::infinity(), t);
    const double below = ts.integrate(density, -std::numeric_limits<double>::infinity(), 0.0);
    return below + boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, t, 15, 1e-14);
}

// sup P(delta <= t) over the G-normal family, from the G-heat equation
//   u_s = 1/2 (hi^2 (u_xx)^+ - lo^2 (u_xx)^-),  u(0, x) = 1{x <= t},
// evaluated as u(1, 0). Explicit finite differences; accurate to ~1e-3.
// `upper = false` gives the conjugate (infimum) by solving for 1 - indicator.
inline double g_heat_cdf(double t, double lo, double hi, bool upper, double dx = 0.01) {
    const double half_width = 12.0 * hi + std::abs(t);
    const int n = static_cast<int>(2.0 * half_width / dx) + 1;
    const double dt = 0.4 * dx * dx / (hi * hi);
    const int steps = static_cast<int>(std::ceil(1.0 / dt));
    const double h = 1.0 / steps;
    std::vector<double> u(n), next(n);
    for (int i = 0; i < n; ++i) {
        const double x = -half_width + i * dx;
        const double ind = x < t ? 1.0 : (x == t ? 0.5 : 0.0);
        u[i] = upper ? ind : 1.0 - ind;
    }
    for (int s = 0; s < steps; ++s) {
        next.front() = u.front();
        next.back() = u.back();
        for (int i = 1; i < n - 1; ++i) {
            const double uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
            const double g = 0.5 * (uxx > 0.0 ? hi * hi * uxx : lo * lo * uxx);
            next[i] = u[i] + h * g;
        }
        std::swap(u, next);
    }
    const double v = u[static_cast<std::size_t>((n - 1) / 2)];
    return upper ? v : 1.0 - v;
}

// Piecewise error envelopes of the threshold rule, written term by term:
//   upper = 1/2 sup P(Y <= y0 | x_a) + 1/2 sup P(Y > y0 | x_b)
//   lower = 1/2 inf P(Y <= y0 | x_a) + 1/2 inf P(Y > y0 | x_b)
// Each term switches form where its own argument changes sign.
inline double pe_upper_piecewise(double y0, double xa, double xb, double mlo, double mhi, double slo, double shi) {
    const double s = slo + shi;
    const double gap = (shi - slo) / (2.0 * s);
    const double a = y0 > xa + mlo ? gap + slo / s * q((mlo + xa - y0) / slo) : shi / s * q((mlo + xa - y0) / shi);
    const double b = y0 > xb + mhi ? shi / s * q((y0 - xb - mhi) / shi) : gap + slo / s * q((y0 - xb - mhi) / slo);
    return a + b;
}

inline double pe_lower_piecewise(double y0, double xa, double xb, double mlo, double mhi, double slo, double shi) {
    const double s = slo + shi;
    const double a = y0 > xa + mhi ? 0.5 - shi / s * q((y0 - xa - mhi) / shi)
                                    : slo / s - slo / s * q((y0 - xa - mhi) / slo);
    const double b = y0 > xb + mlo ? slo / s - slo / s * q((mlo + xb - y0) / slo)
                                    : 0.5 - shi / s * q((mlo + xb - y0) / shi);
    return a + b;
}

// E over |H| ~ Rayleigh(1/sqrt 2) (density 2 r exp(-r^2)) of f(|H|).
template <class F>
double rayleigh_average(F f) {
    auto integrand = [&](double r) { return f(r) * 2.0 * r * std::exp(-r * r); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, 40.0, 20, 1e-15);
}

struct Model {
    double xa, xb, mlo, mhi, slo, shi;
};

// Random model with mean width below the symbol distance.
inline Model random_existence_model(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double xb = -2.0 * u(g);
    const double d = 0.5 + 2.5 * u(g);
    const double slo = 0.3 + 1.7 * u(g);
    const double shi = slo * (1.0 + 2.0 * u(g));
    const double w = d * 0.95 * u(g);
    const double c = -1.0 + 2.0 * u(g);
    return {xb + d, xb, c - 0.5 * w, c + 0.5 * w, slo, shi};
}

}  // namespace oracle
