#pragma once

#include <cmath>
#include <complex>

namespace wavebound {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Point or vector in the (x1, x2) plane, x2 measured downward from the free surface.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x1 + o.x1, x2 + o.x2}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x1 - o.x1, x2 - o.x2}; }
    constexpr Vec2 operator*(double s) const { return {x1 * s, x2 * s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Vec2 v) { return std::hypot(v.x1, v.x2); }

// Gradient of a complex field.
struct CVec2 {
    cplx x1{};
    cplx x2{};

    CVec2 operator+(const CVec2& o) const { return {x1 + o.x1, x2 + o.x2}; }
    CVec2 operator-(const CVec2& o) const { return {x1 - o.x1, x2 - o.x2}; }
    CVec2 operator*(cplx s) const { return {x1 * s, x2 * s}; }
    CVec2& operator+=(const CVec2& o) { x1 += o.x1; x2 += o.x2; return *this; }
    CVec2& operator-=(const CVec2& o) { x1 -= o.x1; x2 -= o.x2; return *this; }
};

inline cplx dot(const CVec2& g, Vec2 v) { return g.x1 * v.x1 + g.x2 * v.x2; }
inline double norm_sq(const CVec2& g) { return std::norm(g.x1) + std::norm(g.x2); }

}  // namespace wavebound
