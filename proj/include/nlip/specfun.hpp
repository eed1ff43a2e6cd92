#ifndef NLIP_SPECFUN_HPP
#define NLIP_SPECFUN_HPP

// Self-contained special functions: Gamma, the complete elliptic integral of
// the second kind, and the Gauss hypergeometric function on the real ranges
// the energy formulas need.
//
// Conventions:
//   * elliptic_e uses the PARAMETER convention, E(p) = int_0^{pi/2}
//     sqrt(1 - p sin^2 t) dt, i.e. the argument is the squared eccentricity.
//     Libraries differ here; every caller in this project passes e^2.
//   * hyp2f1 supports z < 1.  Negative z is mapped into [0, 1) by the Pfaff
//     transformation; the series is summed directly elsewhere.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "nlip/common.hpp"

namespace nlip {

namespace detail {

// Lanczos g = 7, n = 9 coefficients (Godfrey / Numerical Recipes).
inline constexpr double lanczos_g = 7.0;
inline constexpr double lanczos_coeff[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline double lanczos_series(double x) {
    double a = lanczos_coeff[0];
    for (int i = 1; i < 9; ++i) a += lanczos_coeff[i] / (x + i);
    return a;
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail

// Gamma(x) for real non-pole arguments, relative accuracy ~1e-14 on (0, 10].
inline double gamma_fn(double x) {
    require_finite(x, "gamma argument");
    if (detail::is_nonpositive_integer(x))
        throw std::domain_error("gamma: pole at non-positive integer " + std::to_string(x));
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return pi / (std::sin(pi * x) * gamma_fn(1.0 - x));
    }
    double z = x - 1.0;
    double t = z + detail::lanczos_g + 0.5;
    return std::sqrt(two_pi) * std::pow(t, z + 0.5) * std::exp(-t) * detail::lanczos_series(z);
}

// log Gamma(x) for x > 0; used by the threshold formulas, which are assembled
// in log form to dodge overflow and cancellation near the alpha-window ends.
inline double log_gamma(double x) {
    require_finite(x, "log_gamma argument");
    if (x <= 0.0) throw std::domain_error("log_gamma requires x > 0");
    if (x < 0.5) return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
    double z = x - 1.0;
    double t = z + detail::lanczos_g + 0.5;
    return 0.5 * std::log(two_pi) + (z + 0.5) * std::log(t) - t +
           std::log(detail::lanczos_series(z));
}

namespace detail {

// Carlson symmetric forms by the duplication algorithm.
inline double carlson_rf(double x, double y, double z) {
    double dx, dy, dz;
    do {
        double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        double lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        double mu = (x + y + z) / 3.0;
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > 1e-12);
    double e2 = dx * dy - dz * dz;
    double e3 = dx * dy * dz;
    double mu = (x + y + z) / 3.0;
    return (1.0 + (e2 * (e2 / 24.0 - e3 * 3.0 / 44.0 - 0.1)) + e3 / 14.0) / std::sqrt(mu);
}

inline double carlson_rd(double x, double y, double z) {
    double sum = 0.0, fac = 1.0;
    double dx, dy, dz;
    do {
        double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        double lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        double mu = (x + y + 3.0 * z) / 5.0;
        dx = (mu - x) / mu;
        dy = (mu - y) / mu;
        dz = (mu - z) / mu;
    } while (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) > 1e-12);
    double mu = (x + y + 3.0 * z) / 5.0;
    double ea = dx * dy;
    double eb = dz * dz;
    double ec = ea - eb;
    double ed = ea - 6.0 * eb;
    double ee = ed + ec + ec;
    double s = ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee) +
               dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea));
    return 3.0 * sum + fac * (1.0 + s) / (mu * std::sqrt(mu));
}

}  // namespace detail

// Complete elliptic integral of the second kind, parameter convention:
// E(p) = int_0^{pi/2} sqrt(1 - p sin^2 t) dt,  p in [0, 1].
inline double elliptic_e(double p) {
    require_finite(p, "elliptic_e argument");
    if (p < 0.0 || p > 1.0)
        throw std::domain_error("elliptic_e: parameter " + std::to_string(p) + " outside [0,1]");
    if (p == 0.0) return pi / 2.0;
    if (p == 1.0) return 1.0;
    double q = 1.0 - p;
    return detail::carlson_rf(0.0, q, 1.0) - (p / 3.0) * detail::carlson_rd(0.0, q, 1.0);
}

namespace detail {

// Direct Gauss series at 0 <= z < 1.  All call sites in this project produce
// eventually fixed-sign terms, so plain compensated summation is stable; the
// iteration cap covers z as close to 1 as 1e-7 when c - a - b > 0.
inline double hyp2f1_series(double a, double b, double c, double z) {
    KahanSum sum;
    sum.add(1.0);
    double term = 1.0;
    const std::size_t cap = 50'000'000;
    int small_count = 0;
    for (std::size_t n = 0; n < cap; ++n) {
        double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (1.0 + dn)) * z;
        sum.add(term);
        if (std::fabs(term) <= 1e-17 * std::fabs(sum.value())) {
            if (++small_count >= 3) return sum.value();
        } else {
            small_count = 0;
        }
    }
    std::ostringstream os;
    os << "hyp2f1: series did not converge for a=" << a << " b=" << b << " c=" << c
       << " z=" << z << " after " << cap << " terms (last |term|=" << std::fabs(term) << ")";
    throw convergence_error(os.str());
}

}  // namespace detail

// Gauss hypergeometric function 2F1(a, b; c; z) for real parameters, z < 1.
inline double hyp2f1(double a, double b, double c, double z) {
    require_finite(a, "hyp2f1 a");
    require_finite(b, "hyp2f1 b");
    require_finite(c, "hyp2f1 c");
    require_finite(z, "hyp2f1 z");
    if (detail::is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c is a non-positive integer");
    if (z >= 1.0)
        throw std::domain_error("hyp2f1: z >= 1 unsupported (z=" + std::to_string(z) + ")");
    if (z == 0.0) return 1.0;
    if (z < 0.0) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), w in (0,1)
        double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
    }
    return detail::hyp2f1_series(a, b, c, z);
}

}  // namespace nlip

#endif
