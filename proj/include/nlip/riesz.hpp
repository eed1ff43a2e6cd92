#ifndef NLIP_RIESZ_HPP
#define NLIP_RIESZ_HPP

// The nonlocal part of the energy: the Riesz double integral
//     E_nl(Omega) = int_Omega int_Omega |x - y|^(-alpha) dx dy
// over ordered pairs, the potential v(x) = int_Omega |x - y|^(-alpha) dy,
// closed forms for disks and ellipses, and an independent Monte-Carlo oracle.
//
// Quadrature route: both integrals are reduced to the boundary.  With outward
// normal n and beta = 2 - alpha,
//     E_nl = -(2-alpha)^(-2) oint oint |x-y|^beta n(x).n(y) dl(x) dl(y),
//     v(x) =  (2-alpha)^(-1) oint |x-y|^(-alpha) (y-x).n(y) dl(y).
// On the periodic parameter grid the |x-y|^beta kernel is only C^0 across the
// diagonal; subtracting the exactly integrable model g(t)g(s)|2 sin((t-s)/2)|^beta
// with g = J^((4-alpha)/2) restores O(h^(5-alpha)) convergence, and the model
// term is summed exactly through the Fourier coefficients of |2 sin(u/2)|^beta.
// For a circle the subtraction is exact, so disks are computed to rounding.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "nlip/common.hpp"
#include "nlip/domain.hpp"
#include "nlip/fft.hpp"
#include "nlip/specfun.hpp"

namespace nlip {

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

// Kernel exponent restricted to [0.05, 1.95]: the Gamma factors in the closed
// forms lose conditioning at the endpoints of (0, 2).
class Alpha {
public:
    static constexpr double min_value = 0.05;
    static constexpr double max_value = 1.95;

    explicit Alpha(double v) : v_(v) {
        require_finite(v, "alpha");
        if (v < min_value || v > max_value)
            throw std::invalid_argument("alpha " + std::to_string(v) + " outside [" +
                                        std::to_string(min_value) + ", " +
                                        std::to_string(max_value) + "]");
    }
    double value() const { return v_; }
    operator double() const { return v_; }

private:
    double v_;
};

struct QuadratureConfig {
    std::size_t boundary_panels = 1024;     // boundary grid size (rounded up to 2^k)
    double singular_split_radius = 0.05;    // near-boundary refinement distance
    std::size_t mc_samples = 1'000'000;
    std::uint64_t mc_seed = 12345;
    double tol = 1e-6;                      // requested relative tolerance

    void validate() const {
        if (boundary_panels < 64)
            throw std::invalid_argument("QuadratureConfig: boundary_panels must be >= 64");
        if (!(tol > 0.0)) throw std::invalid_argument("QuadratureConfig: tol must be positive");
        if (!(singular_split_radius > 0.0))
            throw std::invalid_argument("QuadratureConfig: singular_split_radius must be positive");
    }
};

struct EnergyBreakdown {
    double perimeter = 0.0;
    double nonlocal = 0.0;
    double total = 0.0;
    double alpha = 0.0;
    double mass = 0.0;
    double err_estimate = 0.0;
};

inline EnergyBreakdown make_breakdown(double per, double nl, double alpha, double mass,
                                      double err = 0.0) {
    return EnergyBreakdown{per, nl, per + nl, alpha, mass, err};
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

// coefficient of R^(4-alpha) in the nonlocal energy of a ball: the bracket in
// the single-ball formula, assembled in log-Gamma form
inline double ball_nonlocal_coeff(double alpha) {
    return pi * pi *
           std::exp(log_gamma(2.0 - alpha) - log_gamma(2.0 - alpha / 2.0) -
                    log_gamma(3.0 - alpha / 2.0));
}

inline double ellipse_nonlocal_closed(double R, double e, Alpha alpha) {
    const double a = alpha.value();
    const double e2 = e * e;
    double f1 = hyp2f1(0.5, 1.0 - a / 2.0, 1.0, e2);
    double f2 = (e2 == 0.0) ? 1.0 : hyp2f1(0.5, 1.0 - a / 2.0, 1.0, e2 / (e2 - 1.0));
    double bracket = (1.0 - e2) * f1 + std::pow(1.0 - e2, a / 2.0) * f2;
    return ball_nonlocal_coeff(a) * std::pow(1.0 - e2, -(a + 2.0) / 4.0) *
           std::pow(R, 4.0 - a) * bracket;
}

inline EnergyBreakdown ellipse_energy_closed(double R, double e, Alpha alpha) {
    if (!(R > 0.0)) throw std::invalid_argument("ellipse_energy_closed: R must be positive");
    if (e < 0.0 || e >= 1.0)
        throw std::invalid_argument("ellipse_energy_closed: e must lie in [0,1)");
    return make_breakdown(perimeter_ellipse(R, e), ellipse_nonlocal_closed(R, e, alpha),
                          alpha.value(), pi * R * R);
}

// single ball: the e = 0 reduction of the ellipse formula (bit-identical)
inline EnergyBreakdown ball_energy_closed(double R, Alpha alpha) {
    if (!(R > 0.0)) throw std::invalid_argument("ball_energy_closed: R must be positive");
    return make_breakdown(two_pi * R, ellipse_nonlocal_closed(R, 0.0, alpha), alpha.value(),
                          pi * R * R);
}

// potential of the unit ball on its boundary
inline double ball_potential_v0(double alpha) {
    return pi * std::exp(log_gamma(2.0 - alpha) - 2.0 * log_gamma(2.0 - alpha / 2.0));
}

// leading boundary behavior of v^B(1+s) - v0 for |s| << 1; the alpha = 1
// branch is logarithmic
inline double ball_potential_boundary_expansion(double s, Alpha alpha) {
    const double a = alpha.value();
    if (s == 0.0) return 0.0;
    if (a == 1.0) return -s * (2.0 * std::log(1.0 / std::fabs(s)) - 2.0 + 3.0 * std::log(4.0));
    if (a < 1.0) {
        double coeff =
            pi * a * (2.0 - a) * gamma_fn(1.0 - a) / (2.0 * std::pow(gamma_fn(2.0 - a / 2.0), 2));
        return -coeff * s;
    }
    double coeff = std::sqrt(pi) * gamma_fn((a - 1.0) / 2.0) / ((2.0 - a) * gamma_fn(a / 2.0));
    return -coeff * std::pow(std::fabs(s), 1.0 - a) * s;
}

// v^B(r): potential of the unit ball at distance r from its center.  The
// hypergeometric series converges for any |r - 1| >= 1e-6; closer to the
// boundary the value switches to v0 plus the boundary expansion.
inline double ball_potential_closed(double r, Alpha alpha) {
    if (!(r >= 0.0)) throw std::invalid_argument("ball_potential_closed: r must be >= 0");
    const double a = alpha.value();
    if (std::fabs(r - 1.0) < 1e-6) {
        return ball_potential_v0(a) + ball_potential_boundary_expansion(r - 1.0, alpha);
    }
    if (r < 1.0)
        return two_pi / (2.0 - a) * hyp2f1((a - 2.0) / 2.0, a / 2.0, 1.0, r * r);
    return pi / std::pow(r, a) * hyp2f1(a / 2.0, a / 2.0, 2.0, 1.0 / (r * r));
}

// ---------------------------------------------------------------------------
// Fourier coefficients of q(u) = |2 sin(u/2)|^beta
//   c_0 = Gamma(beta+1)/Gamma(1+beta/2)^2,   c_{k+1} = c_k (k - beta/2)/(k + 1 + beta/2)
// ---------------------------------------------------------------------------
inline std::vector<double> ring_kernel_coeffs(double beta, std::size_t kmax) {
    std::vector<double> c(kmax + 1);
    c[0] = std::exp(log_gamma(beta + 1.0) - 2.0 * log_gamma(1.0 + beta / 2.0));
    for (std::size_t k = 0; k < kmax; ++k) {
        double kd = static_cast<double>(k);
        c[k + 1] = c[k] * (kd - beta / 2.0) / (kd + 1.0 + beta / 2.0);
    }
    return c;
}

namespace detail {

inline double nonlocal_from_sample(const BoundarySample& s, double alpha) {
    const std::size_t n = s.size();
    const double beta = 2.0 - alpha;
    const double h = two_pi / static_cast<double>(n);

    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::pow(s.jac[i], 0.5 * (4.0 - alpha));

    // trapezoid sum of the smooth remainder (diagonal terms vanish)
    KahanSum trap;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = (s.x[i] - s.x[j]).norm2();
            double si = std::sin(0.5 * (s.t[i] - s.t[j]));
            double q = std::pow(4.0 * si * si, 0.5 * beta);
            double K = std::pow(d2, 0.5 * beta) * s.normal[i].dot(s.normal[j]) * s.jac[i] * s.jac[j];
            trap.add(K - g[i] * g[j] * q);
        }
    }
    double T = 2.0 * trap.value() * h * h;

    // model term, exact through the ring-kernel Fourier coefficients
    std::vector<std::complex<double>> G = fourier_coeffs(g);
    std::vector<double> c = ring_kernel_coeffs(beta, n / 2);
    KahanSum model;
    model.add(c[0] * std::norm(G[0]));
    for (std::size_t k = 1; k < n / 2; ++k) model.add(2.0 * c[k] * std::norm(G[k]));
    model.add(c[n / 2] * std::norm(G[n / 2]));
    double M = 4.0 * pi * pi * model.value();

    return -(T + M) / (beta * beta);
}

template <class Dom>
inline std::pair<double, double> nonlocal_smooth(const Dom& dom, Alpha alpha,
                                                 const QuadratureConfig& cfg) {
    std::size_t n = next_pow2(std::max<std::size_t>(cfg.boundary_panels, 64));
    double coarse = nonlocal_from_sample(sample_boundary(dom, n / 2), alpha.value());
    double fine = nonlocal_from_sample(sample_boundary(dom, n), alpha.value());
    // Richardson-style estimate for the fine value from the h^(5-alpha) rate
    double rate = std::pow(2.0, 5.0 - alpha.value()) - 1.0;
    double err = std::fabs(fine - coarse) / rate + 4e-16 * std::fabs(fine);
    return {fine, err};
}

// smooth tensor-trapezoid cross term between two disjoint circles, refined
// until the doubling increment is below tol
inline std::pair<double, double> pair_interaction_disks(const Disk& da, const Disk& db,
                                                        double alpha, double tol) {
    const double beta = 2.0 - alpha;
    double prev = 0.0;
    double cur = 0.0;
    for (std::size_t n = 128; n <= 16384; n *= 2) {
        BoundarySample sa = sample_boundary(da, n);
        BoundarySample sb = sample_boundary(db, n);
        KahanSum acc;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double d2 = (sa.x[i] - sb.x[j]).norm2();
                acc.add(std::pow(d2, 0.5 * beta) * sa.normal[i].dot(sb.normal[j]));
            }
        double h = two_pi / static_cast<double>(n);
        cur = -acc.value() * da.radius * db.radius * h * h / (beta * beta);
        if (n > 128 && std::fabs(cur - prev) <= tol * std::max(std::fabs(cur), 1e-300))
            return {cur, std::fabs(cur - prev)};
        prev = cur;
    }
    return {cur, std::fabs(cur - prev)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Nonlocal energy (ordered-pair convention: cross terms between components
// count twice)
// ---------------------------------------------------------------------------
struct QuadValue {
    double value = 0.0;
    double err_estimate = 0.0;
};

inline QuadValue nonlocal_energy_result(const StarDomain& dom, Alpha alpha,
                                        const QuadratureConfig& cfg) {
    cfg.validate();
    auto [v, e] = detail::nonlocal_smooth(dom, alpha, cfg);
    if (e > cfg.tol * std::max(std::fabs(v), 1e-300))
        throw tolerance_error("nonlocal_energy: estimated error above tolerance", e / std::fabs(v),
                              cfg.tol);
    return {v, e};
}

inline QuadValue nonlocal_energy_result(const EllipseDomain& dom, Alpha alpha,
                                        const QuadratureConfig& cfg) {
    cfg.validate();
    auto [v, e] = detail::nonlocal_smooth(dom, alpha, cfg);
    if (e > cfg.tol * std::max(std::fabs(v), 1e-300))
        throw tolerance_error("nonlocal_energy: estimated error above tolerance", e / std::fabs(v),
                              cfg.tol);
    return {v, e};
}

inline QuadValue nonlocal_energy_result(const DiskSystem& sys, Alpha alpha,
                                        const QuadratureConfig& cfg) {
    cfg.validate();
    double total = 0.0;
    double err = 0.0;
    for (const Disk& d : sys.disks())
        total += ellipse_nonlocal_closed(d.radius, 0.0, alpha);
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            auto [v, e] = detail::pair_interaction_disks(sys.disks()[i], sys.disks()[j],
                                                         alpha.value(), cfg.tol);
            total += 2.0 * v;
            err += 2.0 * e;
        }
    return {total, err};
}

template <class Dom>
inline double nonlocal_energy(const Dom& dom, Alpha alpha, const QuadratureConfig& cfg = {}) {
    return nonlocal_energy_result(dom, alpha, cfg).value;
}

// ---------------------------------------------------------------------------
// Potential v(x) for arbitrary evaluation points
// ---------------------------------------------------------------------------
namespace detail {

// 12-point Gauss-Legendre nodes/weights on [-1, 1]
inline constexpr std::array<double, 12> gl12_x = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
    -0.3678314989981802, -0.1252334085114689, 0.1252334085114689,  0.3678314989981802,
    0.5873179542866175,  0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
inline constexpr std::array<double, 12> gl12_w = {
    0.04717533638651183, 0.10693932599531843, 0.16007832854334622, 0.20316742672306592,
    0.2334925365383548,  0.24914704581340277, 0.24914704581340277, 0.2334925365383548,
    0.20316742672306592, 0.16007832854334622, 0.10693932599531843, 0.04717533638651183};

// geometry of a smooth closed boundary at one parameter value
template <class Dom>
inline void boundary_point(const Dom& dom, double t, Vec2& x, Vec2& nrm, double& J);

template <>
inline void boundary_point(const StarDomain& dom, double t, Vec2& x, Vec2& nrm, double& J) {
    double r = dom.radius(t);
    double rp = dom.r0() * dom.rho_t(t);
    double c = std::cos(t), s = std::sin(t);
    x = {dom.center().x + r * c, dom.center().y + r * s};
    Vec2 xp{rp * c - r * s, rp * s + r * c};
    J = xp.norm();
    nrm = {xp.y / J, -xp.x / J};
}

template <>
inline void boundary_point(const EllipseDomain& dom, double t, Vec2& x, Vec2& nrm, double& J) {
    double a = dom.semi_major(), b = dom.semi_minor();
    double c = std::cos(t), s = std::sin(t);
    x = {a * c, b * s};
    Vec2 xp{-a * s, b * c};
    J = xp.norm();
    nrm = {xp.y / J, -xp.x / J};
}

template <class Dom>
inline double potential_graded(const Dom& dom, double alpha, Vec2 p, double t0, double dist) {
    // geometric panels growing away from the closest parameter on both sides
    double hmin = std::min(std::max(dist, 1e-9) / 4.0, pi / 8.0);
    std::vector<std::pair<double, double>> panels;
    double lo = 0.0, hcur = hmin;
    while (lo < pi) {
        double hi = std::min(pi, lo + hcur);
        panels.emplace_back(t0 + lo, t0 + hi);
        panels.emplace_back(t0 - hi, t0 - lo);
        lo = hi;
        hcur *= 2.0;
    }
    KahanSum acc;
    for (auto [a, b] : panels) {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int k = 0; k < 12; ++k) {
            double t = mid + half * gl12_x[k];
            Vec2 x, nrm;
            double J;
            boundary_point(dom, t, x, nrm, J);
            Vec2 dy = x - p;
            double d = dy.norm();
            if (d == 0.0) continue;
            acc.add(gl12_w[k] * half * std::pow(d, -alpha) * dy.dot(nrm) * J);
        }
    }
    return acc.value() / (2.0 - alpha);
}

template <class Dom>
inline double potential_smooth_point(const Dom& dom, double alpha, Vec2 p,
                                     const QuadratureConfig& cfg) {
    // locate the closest boundary parameter on a coarse grid, then refine
    const std::size_t m = 2048;
    double best = std::numeric_limits<double>::infinity();
    double t0 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double t = two_pi * static_cast<double>(i) / static_cast<double>(m);
        Vec2 x, nrm;
        double J;
        boundary_point(dom, t, x, nrm, J);
        double d2 = (x - p).norm2();
        if (d2 < best) { best = d2; t0 = t; }
    }
    // golden-section refinement in the bracketing cell
    double gl = t0 - two_pi / m, gr = t0 + two_pi / m;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = gr - phi * (gr - gl), x2 = gl + phi * (gr - gl);
    auto dist2 = [&](double t) {
        Vec2 x, nrm;
        double J;
        boundary_point(dom, t, x, nrm, J);
        return (x - p).norm2();
    };
    double f1 = dist2(x1), f2 = dist2(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) { gr = x2; x2 = x1; f2 = f1; x1 = gr - phi * (gr - gl); f1 = dist2(x1); }
        else { gl = x1; x1 = x2; f1 = f2; x2 = gl + phi * (gr - gl); f2 = dist2(x2); }
    }
    t0 = 0.5 * (gl + gr);
    double dist = std::sqrt(dist2(t0));

    if (dist >= cfg.singular_split_radius) {
        std::size_t n = next_pow2(std::max<std::size_t>(cfg.boundary_panels, 64));
        KahanSum acc;
        for (std::size_t i = 0; i < n; ++i) {
            double t = two_pi * static_cast<double>(i) / static_cast<double>(n);
            Vec2 x, nrm;
            double J;
            boundary_point(dom, t, x, nrm, J);
            Vec2 dy = x - p;
            acc.add(std::pow(dy.norm(), -alpha) * dy.dot(nrm) * J);
        }
        return acc.value() * (two_pi / static_cast<double>(n)) / (2.0 - alpha);
    }
    return potential_graded(dom, alpha, p, t0, dist);
}

}  // namespace detail

inline double potential_at(const StarDomain& dom, Alpha alpha, Vec2 p,
                           const QuadratureConfig& cfg = {}) {
    cfg.validate();
    return detail::potential_smooth_point(dom, alpha.value(), p, cfg);
}

inline double potential_at(const EllipseDomain& dom, Alpha alpha, Vec2 p,
                           const QuadratureConfig& cfg = {}) {
    cfg.validate();
    return detail::potential_smooth_point(dom, alpha.value(), p, cfg);
}

inline double potential_at(const DiskSystem& sys, Alpha alpha, Vec2 p,
                           const QuadratureConfig& cfg = {}) {
    cfg.validate();
    double v = 0.0;
    for (const Disk& d : sys.disks()) {
        double r = (p - d.center).norm() / d.radius;
        v += std::pow(d.radius, 2.0 - alpha.value()) * ball_potential_closed(r, alpha);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Potential on the whole boundary grid (one O(n^2) pass).  Exact for circles:
// the subtracted model coincides with the integrand there.
// ---------------------------------------------------------------------------
inline std::vector<double> boundary_potential(const BoundarySample& s, Alpha alpha) {
    const std::size_t n = s.size();
    const double a = alpha.value();
    const double beta = 2.0 - a;
    const double h = two_pi / static_cast<double>(n);
    const double c0 = std::exp(log_gamma(beta + 1.0) - 2.0 * log_gamma(1.0 + beta / 2.0));
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.5 * s.kappa[i] * std::pow(s.jac[i], 3.0 - a);
        KahanSum acc;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Vec2 dy = s.x[j] - s.x[i];
            double d = dy.norm();
            double f = std::pow(d, -a) * dy.dot(s.normal[j]) * s.jac[j];
            double si = std::sin(0.5 * (s.t[i] - s.t[j]));
            acc.add(f - diag * std::pow(4.0 * si * si, 0.5 * beta));
        }
        v[i] = (acc.value() * h + diag * two_pi * c0) / (2.0 - a);
    }
    return v;
}

// E_nl recovered from boundary potential values through the dilation identity
// (4 - alpha) E_nl = 2 oint v (x.n) dl; the choice of origin is immaterial.
inline double nonlocal_from_boundary_potential(const BoundarySample& s,
                                               const std::vector<double>& v, Alpha alpha) {
    KahanSum acc;
    for (std::size_t i = 0; i < s.size(); ++i)
        acc.add(v[i] * s.x[i].dot(s.normal[i]) * s.jac[i]);
    return 2.0 * acc.value() * (two_pi / static_cast<double>(s.size())) / (4.0 - alpha.value());
}

// ---------------------------------------------------------------------------
// Monte-Carlo oracle: rejection-sampled point pairs in the bounding box,
// unbiased for the ordered-pair double integral, reproducible from the seed.
// ---------------------------------------------------------------------------
struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

namespace detail {

template <class Dom>
inline std::array<double, 4> bounding_box(const Dom& dom);

template <>
inline std::array<double, 4> bounding_box(const StarDomain& dom) {
    const std::size_t m = 8192;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t i = 0; i < m; ++i) {
        Vec2 p = dom.point(two_pi * static_cast<double>(i) / static_cast<double>(m));
        xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
    }
    double padx = 1e-3 * (xmax - xmin), pady = 1e-3 * (ymax - ymin);
    return {xmin - padx, xmax + padx, ymin - pady, ymax + pady};
}

template <>
inline std::array<double, 4> bounding_box(const EllipseDomain& dom) {
    return {-dom.semi_major(), dom.semi_major(), -dom.semi_minor(), dom.semi_minor()};
}

template <>
inline std::array<double, 4> bounding_box(const DiskSystem& sys) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Disk& d : sys.disks()) {
        xmin = std::min(xmin, d.center.x - d.radius);
        xmax = std::max(xmax, d.center.x + d.radius);
        ymin = std::min(ymin, d.center.y - d.radius);
        ymax = std::max(ymax, d.center.y + d.radius);
    }
    return {xmin, xmax, ymin, ymax};
}

}  // namespace detail

template <class Dom>
inline McEstimate mc_nonlocal_oracle(const Dom& dom, Alpha alpha, const QuadratureConfig& cfg) {
    if (cfg.mc_samples < 10'000)
        throw std::invalid_argument("mc_nonlocal_oracle: mc_samples must be >= 1e4");
    auto box = detail::bounding_box(dom);
    const double w = box[1] - box[0], hgt = box[3] - box[2];
    const double box_area = w * hgt;
    std::mt19937_64 eng(cfg.mc_seed);
    const double a = alpha.value();
    KahanSum sum, sum2;
    const std::size_t N = cfg.mc_samples;
    for (std::size_t i = 0; i < N; ++i) {
        Vec2 X{box[0] + w * uniform01(eng), box[2] + hgt * uniform01(eng)};
        Vec2 Y{box[0] + w * uniform01(eng), box[2] + hgt * uniform01(eng)};
        double f = 0.0;
        if (dom.contains(X) && dom.contains(Y)) {
            double d = (X - Y).norm();
            if (d > 0.0) f = std::pow(d, -a);
        }
        sum.add(f);
        sum2.add(f * f);
    }
    double mean = sum.value() / static_cast<double>(N);
    double var = std::max(0.0, sum2.value() / static_cast<double>(N) - mean * mean);
    double A2 = box_area * box_area;
    return {A2 * mean, A2 * std::sqrt(var / static_cast<double>(N))};
}

// ---------------------------------------------------------------------------
// Disk systems: exact self terms, quadrature cross terms, and the rigorous
// pointwise bracket m_i m_j / (d_ij +- (r_i + r_j))^alpha for the cross terms.
// ---------------------------------------------------------------------------
struct DiskSystemEnergy {
    EnergyBreakdown breakdown;
    double lower = 0.0;  // rigorous lower bound on the total energy
    double upper = 0.0;  // rigorous upper bound on the total energy
};

inline DiskSystemEnergy disk_system_energy(const DiskSystem& sys, Alpha alpha,
                                           const QuadratureConfig& cfg = {}) {
    cfg.validate();
    const double a = alpha.value();
    double per = perimeter(sys);
    double self = 0.0;
    for (const Disk& d : sys.disks()) self += ellipse_nonlocal_closed(d.radius, 0.0, alpha);
    double cross = 0.0, err = 0.0, crossLower = 0.0, crossUpper = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            const Disk& di = sys.disks()[i];
            const Disk& dj = sys.disks()[j];
            auto [v, e] = detail::pair_interaction_disks(di, dj, a, cfg.tol);
            cross += 2.0 * v;
            err += 2.0 * e;
            double mi = pi * di.radius * di.radius, mj = pi * dj.radius * dj.radius;
            double dij = (di.center - dj.center).norm();
            double rsum = di.radius + dj.radius;
            crossLower += 2.0 * mi * mj * std::pow(dij + rsum, -a);
            crossUpper += 2.0 * mi * mj * std::pow(dij - rsum, -a);
        }
    DiskSystemEnergy out;
    out.breakdown = make_breakdown(per, self + cross, a, area(sys), err);
    out.lower = per + self + crossLower;
    out.upper = per + self + crossUpper;
    return out;
}

// ---------------------------------------------------------------------------
// Total energy E = perimeter + nonlocal; ellipses and single disks route to
// their closed forms.
// ---------------------------------------------------------------------------
inline EnergyBreakdown total_energy(const StarDomain& dom, Alpha alpha,
                                    const QuadratureConfig& cfg = {}) {
    QuadValue nl = nonlocal_energy_result(dom, alpha, cfg);
    return make_breakdown(perimeter(dom), nl.value, alpha.value(), area(dom), nl.err_estimate);
}

inline EnergyBreakdown total_energy(const EllipseDomain& dom, Alpha alpha,
                                    const QuadratureConfig& = {}) {
    return ellipse_energy_closed(dom.R(), dom.e(), alpha);
}

inline EnergyBreakdown total_energy(const DiskSystem& sys, Alpha alpha,
                                    const QuadratureConfig& cfg = {}) {
    if (sys.size() == 1) return ball_energy_closed(sys.disks()[0].radius, alpha);
    return disk_system_energy(sys, alpha, cfg).breakdown;
}

}  // namespace nlip

#endif
