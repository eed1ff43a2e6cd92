#ifndef NLIP_DOMAIN_HPP
#define NLIP_DOMAIN_HPP

// Geometric representations: star-shaped domains with truncated-Fourier
// boundaries, ellipses of prescribed area, and systems of disjoint disks,
// together with their local and global geometric functionals.
//
// Domain values are immutable after construction; invalid geometry is
// rejected eagerly at construction and never silently clamped.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nlip/common.hpp"
#include "nlip/specfun.hpp"

namespace nlip {

// ---------------------------------------------------------------------------
// StarDomain: r(theta) = r0 * (1 + rho(theta)), rho a truncated Fourier series
// rho(theta) = a0 + sum_{k=1}^{N} (a_k cos k theta + b_k sin k theta).
// ---------------------------------------------------------------------------
class StarDomain {
public:
    StarDomain(Vec2 center, double r0, std::vector<double> cos_coeffs,
               std::vector<double> sin_coeffs, double a0 = 0.0)
        : center_(center), r0_(r0), a0_(a0), ak_(std::move(cos_coeffs)), bk_(std::move(sin_coeffs)) {
        require_finite(center_.x, "center.x");
        require_finite(center_.y, "center.y");
        require_finite(r0_, "r0");
        require_finite(a0_, "a0");
        if (r0_ <= 0.0) throw std::invalid_argument("StarDomain: r0 must be positive");
        const std::size_t n = std::max(ak_.size(), bk_.size());
        ak_.resize(std::max<std::size_t>(n, 1), 0.0);
        bk_.resize(std::max<std::size_t>(n, 1), 0.0);
        for (double c : ak_) require_finite(c, "cos coefficient");
        for (double c : bk_) require_finite(c, "sin coefficient");
        // positivity of 1 + rho on a dense check grid (>= 8N points)
        const std::size_t m = std::max<std::size_t>(256, 8 * modes());
        for (std::size_t i = 0; i < m; ++i) {
            double th = two_pi * static_cast<double>(i) / static_cast<double>(m);
            if (1.0 + rho(th) <= 0.0)
                throw std::invalid_argument(
                    "StarDomain: 1 + rho(theta) <= 0 at theta=" + std::to_string(th));
        }
    }

    static StarDomain disk(double radius, Vec2 center = {0.0, 0.0}) {
        return StarDomain(center, radius, {0.0}, {0.0});
    }

    Vec2 center() const { return center_; }
    double r0() const { return r0_; }
    double a0() const { return a0_; }
    std::size_t modes() const { return ak_.size(); }
    const std::vector<double>& cos_coeffs() const { return ak_; }
    const std::vector<double>& sin_coeffs() const { return bk_; }

    double rho(double th) const {
        double s = a0_;
        for (std::size_t k = 1; k <= ak_.size(); ++k) {
            double kd = static_cast<double>(k);
            s += ak_[k - 1] * std::cos(kd * th) + bk_[k - 1] * std::sin(kd * th);
        }
        return s;
    }
    double rho_t(double th) const {
        double s = 0.0;
        for (std::size_t k = 1; k <= ak_.size(); ++k) {
            double kd = static_cast<double>(k);
            s += kd * (-ak_[k - 1] * std::sin(kd * th) + bk_[k - 1] * std::cos(kd * th));
        }
        return s;
    }
    double rho_tt(double th) const {
        double s = 0.0;
        for (std::size_t k = 1; k <= ak_.size(); ++k) {
            double kd = static_cast<double>(k);
            s -= kd * kd * (ak_[k - 1] * std::cos(kd * th) + bk_[k - 1] * std::sin(kd * th));
        }
        return s;
    }

    double radius(double th) const { return r0_ * (1.0 + rho(th)); }
    Vec2 point(double th) const {
        double r = radius(th);
        return {center_.x + r * std::cos(th), center_.y + r * std::sin(th)};
    }

    // uniform grid size used by all grid quadratures on this domain
    std::size_t grid_size() const { return std::max<std::size_t>(256, 16 * modes()); }

    bool contains(Vec2 p) const {
        Vec2 d = p - center_;
        double th = std::atan2(d.y, d.x);
        return d.norm() < radius(th);
    }

private:
    Vec2 center_;
    double r0_;
    double a0_;
    std::vector<double> ak_;
    std::vector<double> bk_;
};

// ---------------------------------------------------------------------------
// EllipseDomain: area pi R^2, eccentricity e, centered at the origin with
// semi-axes a = R (1-e^2)^(-1/4), b = R (1-e^2)^(1/4).
// ---------------------------------------------------------------------------
class EllipseDomain {
public:
    EllipseDomain(double effective_radius, double eccentricity)
        : R_(effective_radius), e_(eccentricity) {
        require_finite(R_, "R");
        require_finite(e_, "e");
        if (R_ <= 0.0) throw std::invalid_argument("EllipseDomain: R must be positive");
        if (e_ < 0.0 || e_ >= 1.0)
            throw std::invalid_argument("EllipseDomain: eccentricity must lie in [0,1)");
    }

    double R() const { return R_; }
    double e() const { return e_; }
    double semi_major() const { return R_ / std::pow(1.0 - e_ * e_, 0.25); }
    double semi_minor() const { return R_ * std::pow(1.0 - e_ * e_, 0.25); }

    bool contains(Vec2 p) const {
        double a = semi_major(), b = semi_minor();
        return (p.x / a) * (p.x / a) + (p.y / b) * (p.y / b) < 1.0;
    }

    // Fourier projection of the polar graph onto a StarDomain with n_modes
    // cosine modes; geometric decay of the coefficients makes the truncation
    // negligible for moderate eccentricity.
    StarDomain to_star(std::size_t n_modes = 64) const {
        const std::size_t m = 8192;
        const double a = semi_major(), b = semi_minor();
        std::vector<double> r(m);
        double r0 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double th = two_pi * static_cast<double>(i) / static_cast<double>(m);
            double c = std::cos(th), s = std::sin(th);
            r[i] = 1.0 / std::sqrt((c / a) * (c / a) + (s / b) * (s / b));
            r0 += r[i];
        }
        r0 /= static_cast<double>(m);
        std::vector<double> ak(n_modes, 0.0), bk(n_modes, 0.0);
        for (std::size_t k = 1; k <= n_modes; ++k) {
            double sa = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double th = two_pi * static_cast<double>(i) / static_cast<double>(m);
                sa += (r[i] / r0 - 1.0) * std::cos(static_cast<double>(k) * th);
            }
            ak[k - 1] = 2.0 * sa / static_cast<double>(m);
        }
        return StarDomain({0.0, 0.0}, r0, ak, bk);
    }

private:
    double R_;
    double e_;
};

// ---------------------------------------------------------------------------
// DiskSystem: finitely many disks with pairwise disjoint closures.
// ---------------------------------------------------------------------------
struct Disk {
    Vec2 center;
    double radius;
};

class DiskSystem {
public:
    explicit DiskSystem(std::vector<Disk> disks) : disks_(std::move(disks)) {
        if (disks_.empty()) throw std::invalid_argument("DiskSystem: needs at least one disk");
        for (const Disk& d : disks_) {
            require_finite(d.center.x, "disk center.x");
            require_finite(d.center.y, "disk center.y");
            require_finite(d.radius, "disk radius");
            if (d.radius <= 0.0) throw std::invalid_argument("DiskSystem: radius must be positive");
        }
        for (std::size_t i = 0; i < disks_.size(); ++i)
            for (std::size_t j = i + 1; j < disks_.size(); ++j) {
                double gap = (disks_[i].center - disks_[j].center).norm() -
                             (disks_[i].radius + disks_[j].radius);
                if (gap <= 0.0)
                    throw std::invalid_argument("DiskSystem: disks " + std::to_string(i) + " and " +
                                                std::to_string(j) + " are not disjoint");
            }
    }

    const std::vector<Disk>& disks() const { return disks_; }
    std::size_t size() const { return disks_.size(); }

    bool contains(Vec2 p) const {
        for (const Disk& d : disks_)
            if ((p - d.center).norm() < d.radius) return true;
        return false;
    }

private:
    std::vector<Disk> disks_;
};

// ---------------------------------------------------------------------------
// Boundary sampling shared by the quadratures: positions, speed (arclength
// Jacobian), outward normals and curvature at n uniform parameter values.
// ---------------------------------------------------------------------------
struct BoundarySample {
    std::vector<double> t;
    std::vector<Vec2> x;
    std::vector<double> jac;
    std::vector<Vec2> normal;
    std::vector<double> kappa;
    std::size_t size() const { return t.size(); }
};

inline BoundarySample sample_boundary(const StarDomain& dom, std::size_t n) {
    BoundarySample s;
    s.t.resize(n); s.x.resize(n); s.jac.resize(n); s.normal.resize(n); s.kappa.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double th = two_pi * static_cast<double>(i) / static_cast<double>(n);
        double r = dom.radius(th);
        double rp = dom.r0() * dom.rho_t(th);
        double rpp = dom.r0() * dom.rho_tt(th);
        double c = std::cos(th), si = std::sin(th);
        Vec2 xp{rp * c - r * si, rp * si + r * c};
        double J = xp.norm();
        s.t[i] = th;
        s.x[i] = {dom.center().x + r * c, dom.center().y + r * si};
        s.jac[i] = J;
        s.normal[i] = {xp.y / J, -xp.x / J};
        s.kappa[i] = (r * r + 2.0 * rp * rp - r * rpp) / std::pow(r * r + rp * rp, 1.5);
    }
    return s;
}

inline BoundarySample sample_boundary(const EllipseDomain& dom, std::size_t n) {
    BoundarySample s;
    s.t.resize(n); s.x.resize(n); s.jac.resize(n); s.normal.resize(n); s.kappa.resize(n);
    const double a = dom.semi_major(), b = dom.semi_minor();
    for (std::size_t i = 0; i < n; ++i) {
        double t = two_pi * static_cast<double>(i) / static_cast<double>(n);
        double c = std::cos(t), si = std::sin(t);
        Vec2 xp{-a * si, b * c};
        double J = xp.norm();
        s.t[i] = t;
        s.x[i] = {a * c, b * si};
        s.jac[i] = J;
        s.normal[i] = {xp.y / J, -xp.x / J};
        s.kappa[i] = a * b / (J * J * J);
    }
    return s;
}

inline BoundarySample sample_boundary(const Disk& d, std::size_t n) {
    BoundarySample s;
    s.t.resize(n); s.x.resize(n); s.jac.resize(n); s.normal.resize(n); s.kappa.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double t = two_pi * static_cast<double>(i) / static_cast<double>(n);
        double c = std::cos(t), si = std::sin(t);
        s.t[i] = t;
        s.x[i] = {d.center.x + d.radius * c, d.center.y + d.radius * si};
        s.jac[i] = d.radius;
        s.normal[i] = {c, si};
        s.kappa[i] = 1.0 / d.radius;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Areas and perimeters
// ---------------------------------------------------------------------------
inline double area(const StarDomain& dom) {
    const std::size_t m = dom.grid_size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double r = dom.radius(two_pi * static_cast<double>(i) / static_cast<double>(m));
        s += r * r;
    }
    return pi * s / static_cast<double>(m);
}

inline double area(const EllipseDomain& dom) { return pi * dom.R() * dom.R(); }

inline double area(const DiskSystem& sys) {
    double s = 0.0;
    for (const Disk& d : sys.disks()) s += pi * d.radius * d.radius;
    return s;
}

inline double perimeter(const StarDomain& dom) {
    const std::size_t m = dom.grid_size();
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double th = two_pi * static_cast<double>(i) / static_cast<double>(m);
        double r = dom.radius(th);
        double rp = dom.r0() * dom.rho_t(th);
        s += std::sqrt(r * r + rp * rp);
    }
    return two_pi * s / static_cast<double>(m);
}

inline double perimeter_ellipse(double R, double e) {
    return 4.0 * R * std::pow(1.0 - e * e, -0.25) * elliptic_e(e * e);
}

inline double perimeter(const EllipseDomain& dom) { return perimeter_ellipse(dom.R(), dom.e()); }

inline double perimeter(const DiskSystem& sys) {
    double s = 0.0;
    for (const Disk& d : sys.disks()) s += two_pi * d.radius;
    return s;
}

// curvature of the polar graph, positive for convex boundaries
inline double curvature_at(const StarDomain& dom, double th) {
    double r = dom.radius(th);
    if (r <= 0.0) throw std::domain_error("curvature_at: degenerate radius");
    double rp = dom.r0() * dom.rho_t(th);
    double rpp = dom.r0() * dom.rho_tt(th);
    return (r * r + 2.0 * rp * rp - r * rpp) / std::pow(r * r + rp * rp, 1.5);
}

// ---------------------------------------------------------------------------
// Diameter
// ---------------------------------------------------------------------------
inline double diameter(const StarDomain& dom) {
    const std::size_t m = dom.grid_size();
    std::vector<Vec2> p(m);
    for (std::size_t i = 0; i < m; ++i)
        p[i] = dom.point(two_pi * static_cast<double>(i) / static_cast<double>(m));
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) best = std::max(best, (p[i] - p[j]).norm2());
    return std::sqrt(best);
}

inline double diameter(const EllipseDomain& dom) { return 2.0 * dom.semi_major(); }

inline double diameter(const DiskSystem& sys) {
    double best = 0.0;
    for (const Disk& d : sys.disks()) best = std::max(best, 2.0 * d.radius);
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j) {
            const Disk& a = sys.disks()[i];
            const Disk& b = sys.disks()[j];
            best = std::max(best, (a.center - b.center).norm() + a.radius + b.radius);
        }
    return best;
}

// the two extreme boundary points realizing the diameter (star domains)
inline std::pair<Vec2, Vec2> diameter_points(const StarDomain& dom) {
    const std::size_t m = dom.grid_size();
    std::vector<Vec2> p(m);
    for (std::size_t i = 0; i < m; ++i)
        p[i] = dom.point(two_pi * static_cast<double>(i) / static_cast<double>(m));
    double best = -1.0;
    std::pair<Vec2, Vec2> out{p[0], p[0]};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double d2 = (p[i] - p[j]).norm2();
            if (d2 > best) { best = d2; out = {p[i], p[j]}; }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Isoperimetric deficit: D = |dOmega| / (2 pi) - 1 after rescaling the domain
// to area pi, i.e. D = perimeter / (2 sqrt(pi area)) - 1 (scale invariant).
// ---------------------------------------------------------------------------
template <class Dom>
inline double isoperimetric_deficit(const Dom& dom) {
    double A = area(dom);
    if (A <= 0.0) throw std::invalid_argument("isoperimetric_deficit: non-positive area");
    return perimeter(dom) / (2.0 * std::sqrt(pi * A)) - 1.0;
}

// ---------------------------------------------------------------------------
// Barycenter (star domains)
// ---------------------------------------------------------------------------
inline Vec2 barycenter(const StarDomain& dom) {
    const std::size_t m = dom.grid_size();
    double sx = 0.0, sy = 0.0, sa = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double th = two_pi * static_cast<double>(i) / static_cast<double>(m);
        double r = dom.radius(th);
        sx += r * r * r * std::cos(th) / 3.0;
        sy += r * r * r * std::sin(th) / 3.0;
        sa += 0.5 * r * r;
    }
    return {dom.center().x + sx / sa, dom.center().y + sy / sa};
}

// ---------------------------------------------------------------------------
// Dilation: exact on coefficients, no quadrature involved.
// ---------------------------------------------------------------------------
inline StarDomain dilate(const StarDomain& dom, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    return StarDomain(dom.center() * lambda, dom.r0() * lambda, dom.cos_coeffs(),
                      dom.sin_coeffs(), dom.a0());
}

inline EllipseDomain dilate(const EllipseDomain& dom, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    return EllipseDomain(dom.R() * lambda, dom.e());
}

inline DiskSystem dilate(const DiskSystem& sys, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    std::vector<Disk> d = sys.disks();
    for (Disk& di : d) { di.center = di.center * lambda; di.radius *= lambda; }
    return DiskSystem(std::move(d));
}

// ---------------------------------------------------------------------------
// Cut profile: cross-section lengths A(s) and cumulative areas V(s) along a
// given direction, s measured from the minimal support point.
// ---------------------------------------------------------------------------
struct CutProfile {
    std::vector<double> s;
    std::vector<double> A;
    std::vector<double> V;
    double d = 0.0;  // extent of the domain along the cut direction
};

namespace detail {

// boundary crossings of the line {x : x.u = c}; returns the transverse
// coordinates (x.uperp) of the refined crossing points
inline std::vector<double> line_crossings(const StarDomain& dom, Vec2 u, Vec2 uperp, double c) {
    const std::size_t m = std::max<std::size_t>(2048, 32 * dom.modes());
    std::vector<double> w;
    auto f = [&](double th) { return dom.point(th).dot(u) - c; };
    double prev = f(0.0);
    for (std::size_t i = 1; i <= m; ++i) {
        double th = two_pi * static_cast<double>(i) / static_cast<double>(m);
        double cur = f(th);
        if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) {
            double lo = two_pi * static_cast<double>(i - 1) / static_cast<double>(m);
            double hi = th;
            double flo = prev;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = f(mid);
                if ((flo < 0.0) == (fm < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
            }
            w.push_back(dom.point(0.5 * (lo + hi)).dot(uperp));
        }
        prev = cur;
    }
    std::sort(w.begin(), w.end());
    return w;
}

inline double slice_length(const StarDomain& dom, Vec2 u, Vec2 uperp, double c) {
    std::vector<double> w = line_crossings(dom, u, uperp, c);
    double L = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        Vec2 mid = u * c + uperp * (0.5 * (w[i] + w[i + 1]));
        if (dom.contains(mid)) L += w[i + 1] - w[i];
    }
    return L;
}

}  // namespace detail

inline CutProfile cut_profile(const StarDomain& dom, Vec2 direction, std::size_t n_s) {
    double nn = direction.norm();
    if (!(nn > 0.0)) throw std::invalid_argument("cut_profile: zero direction");
    Vec2 u = direction * (1.0 / nn);
    Vec2 uperp{-u.y, u.x};
    if (n_s < 2) throw std::invalid_argument("cut_profile: need n_s >= 2");

    const std::size_t m = dom.grid_size();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < m; ++i) {
        double p = dom.point(two_pi * static_cast<double>(i) / static_cast<double>(m)).dot(u);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }

    CutProfile cp;
    cp.d = hi - lo;
    cp.s.resize(n_s);
    cp.A.resize(n_s);
    cp.V.resize(n_s);
    for (std::size_t i = 0; i < n_s; ++i) {
        double s = cp.d * static_cast<double>(i) / static_cast<double>(n_s - 1);
        cp.s[i] = s;
        cp.A[i] = detail::slice_length(dom, u, uperp, lo + s);
    }
    cp.V[0] = 0.0;
    for (std::size_t i = 1; i < n_s; ++i)
        cp.V[i] = cp.V[i - 1] + 0.5 * (cp.A[i] + cp.A[i - 1]) * (cp.s[i] - cp.s[i - 1]);
    return cp;
}

}  // namespace nlip

#endif
