#include "wavebound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavebound/conditions.hpp"
#include "wavebound/errors.hpp"

namespace wavebound {

double BodyCurve::fourier_radius(double t, int derivative) const
{
    double s = derivative == 0 ? 1.0 : 0.0;
    for (std::size_t i = 0; i < spec_.coeffs.size(); ++i) {
        const double k = double(i + 1);
        const auto [a, b] = spec_.coeffs[i];
        const double c = std::cos(k * t), sn = std::sin(k * t);
        switch (derivative) {
        case 0: s += a * c + b * sn; break;
        case 1: s += k * (-a * sn + b * c); break;
        default: s += -k * k * (a * c + b * sn); break;
        }
    }
    return spec_.radius * s;
}

Vec2 BodyCurve::point(double t) const
{
    const double c = std::cos(t), s = std::sin(t);
    switch (spec_.kind) {
    case ShapeKind::circle: return spec_.center + Vec2{c, s} * spec_.radius;
    case ShapeKind::ellipse: return spec_.center + Vec2{spec_.semi_a * c, spec_.semi_b * s};
    case ShapeKind::fourier: return spec_.center + Vec2{c, s} * fourier_radius(t, 0);
    }
    return {};
}

Vec2 BodyCurve::d1(double t) const
{
    const double c = std::cos(t), s = std::sin(t);
    switch (spec_.kind) {
    case ShapeKind::circle: return Vec2{-s, c} * spec_.radius;
    case ShapeKind::ellipse: return {-spec_.semi_a * s, spec_.semi_b * c};
    case ShapeKind::fourier: return Vec2{c, s} * fourier_radius(t, 1) + Vec2{-s, c} * fourier_radius(t, 0);
    }
    return {};
}

Vec2 BodyCurve::d2(double t) const
{
    const double c = std::cos(t), s = std::sin(t);
    switch (spec_.kind) {
    case ShapeKind::circle: return Vec2{-c, -s} * spec_.radius;
    case ShapeKind::ellipse: return {-spec_.semi_a * c, -spec_.semi_b * s};
    case ShapeKind::fourier: {
        const double r = fourier_radius(t, 0), r1 = fourier_radius(t, 1), r2 = fourier_radius(t, 2);
        return Vec2{c, s} * (r2 - r) + Vec2{-s, c} * (2.0 * r1);
    }
    }
    return {};
}

FramePoint BodyCurve::frame(double t) const
{
    const Vec2 p1 = d1(t), p2 = d2(t);
    const double speed = norm(p1);
    FramePoint f;
    f.point = point(t);
    f.speed = speed;
    f.tangent = p1 * (1.0 / speed);
    f.normal = {-f.tangent.x2, f.tangent.x1};
    f.curvature = (p1.x1 * p2.x2 - p1.x2 * p2.x1) / (speed * speed * speed);
    return f;
}

double BodyCurve::polar_radius(double theta) const
{
    switch (spec_.kind) {
    case ShapeKind::circle: return spec_.radius;
    case ShapeKind::ellipse: {
        const double a = spec_.semi_a, b = spec_.semi_b;
        return a * b / std::hypot(b * std::cos(theta), a * std::sin(theta));
    }
    case ShapeKind::fourier: return fourier_radius(theta, 0);
    }
    return 0.0;
}

bool BodyCurve::contains(Vec2 x) const
{
    const Vec2 d = x - spec_.center;
    return norm(d) < polar_radius(std::atan2(d.x2, d.x1));
}

double BodyCurve::closest_parameter(Vec2 x) const
{
    const int n = std::min(spec_.samples, 1024);
    return maximize_periodic([&](double t) { const Vec2 d = point(t) - x; return -dot(d, d); }, n).t;
}

double BodyCurve::distance(Vec2 x) const { return norm(point(closest_parameter(x)) - x); }

BodyCurve build_body(const ShapeSpec& spec)
{
    if (spec.samples < 16) throw ParameterError("shape: samples must be at least 16");
    if (!std::isfinite(spec.center.x1) || !std::isfinite(spec.center.x2))
        throw ParameterError("shape: center must be finite");
    switch (spec.kind) {
    case ShapeKind::circle:
        if (!(spec.radius > 0.0)) throw ParameterError("circle: radius must be positive");
        break;
    case ShapeKind::ellipse:
        if (!(spec.semi_a > 0.0) || !(spec.semi_b > 0.0))
            throw ParameterError("ellipse: semi-axes must be positive");
        break;
    case ShapeKind::fourier:
        if (!(spec.radius > 0.0)) throw ParameterError("fourier: radius must be positive");
        break;
    }
    BodyCurve body(spec);
    if (spec.kind == ShapeKind::fourier) {
        // A positive polar radius makes the curve a simple star-shaped loop.
        const auto low = maximize_periodic([&](double t) { return -body.fourier_radius(t, 0); }, spec.samples);
        if (-low.value <= 1e-12 * spec.radius)
            throw GeometryError("fourier shape is not simple: polar radius vanishes near t = " +
                                std::to_string(low.t));
    }
    body.min_depth_ = -maximize_periodic([&](double t) { return -body.point(t).x2; }, spec.samples).value;
    if (!(body.min_depth_ > 0.0))
        throw GeometryError("body is not submerged: min x2 = " + std::to_string(body.min_depth_));
    return body;
}

GeometryBox geometry_box(const BodyCurve& body, EpsilonPolicy policy)
{
    const int n = body.samples();
    GeometryBox box;
    box.L = maximize_periodic([&](double t) { return std::abs(body.point(t).x1); }, n).value;
    box.h = body.min_depth();
    box.H = maximize_periodic([&](double t) { return body.point(t).x2; }, n).value;
    box.kappa = maximize_periodic([&](double t) { return std::abs(body.frame(t).curvature); }, n).value;
    if (const double* e = std::get_if<double>(&policy)) {
        if (!(*e > 0.0) || *e > box.h * (1.0 + 1e-12))
            throw ParameterError("epsilon must lie in (0, h]");
        box.epsilon = *e;
    } else {
        box.epsilon = max_epsilon(body).epsilon;
    }
    return box;
}

}  // namespace wavebound
