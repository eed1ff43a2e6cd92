#ifndef NLIP_COMMON_HPP
#define NLIP_COMMON_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlip {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Thrown when a quadrature cannot meet its requested tolerance; carries the
// achieved error estimate so callers can decide whether to retry or relax.
class tolerance_error : public std::runtime_error {
public:
    tolerance_error(const std::string& what, double achieved, double requested)
        : std::runtime_error(what), achieved_(achieved), requested_(requested) {}
    double achieved() const noexcept { return achieved_; }
    double requested() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw std::invalid_argument(std::string(name) + " must be finite");
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// Compensated (Kahan) accumulator; the hypergeometric series and the long
// quadrature sums need the extra bits.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

// Deterministic uniform doubles from a raw 64-bit generator state.  The
// standard library distributions are implementation defined, which would
// break byte-identical output across toolchains.
template <class Engine>
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

template <class Engine>
inline double uniform(Engine& eng, double a, double b) {
    return a + (b - a) * uniform01(eng);
}

}  // namespace nlip

#endif
