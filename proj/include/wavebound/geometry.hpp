#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "wavebound/types.hpp"

namespace wavebound {

enum class ShapeKind { circle, ellipse, fourier };

// Closed curve description. Fourier shapes are star-shaped about `center` with polar radius
//   r(t) = radius * (1 + sum_k a_k cos(k t) + b_k sin(k t)),  coeffs[k-1] = {a_k, b_k}.
struct ShapeSpec {
    ShapeKind kind = ShapeKind::circle;
    Vec2 center{0.0, 2.0};
    double radius = 1.0;
    double semi_a = 1.0;  // ellipse semi-axis along x1
    double semi_b = 1.0;  // ellipse semi-axis along x2
    std::vector<std::pair<double, double>> coeffs;
    int samples = 4096;
};

// Local data at one boundary parameter. The normal points into the body and the
// tangent follows the counterclockwise parametrization.
struct FramePoint {
    Vec2 point;
    Vec2 normal;
    Vec2 tangent;
    double curvature = 0.0;
    double speed = 0.0;
};

class BodyCurve {
public:
    const ShapeSpec& spec() const { return spec_; }
    Vec2 center() const { return spec_.center; }
    int samples() const { return spec_.samples; }

    Vec2 point(double t) const;
    Vec2 d1(double t) const;
    Vec2 d2(double t) const;
    FramePoint frame(double t) const;

    // Distance from center to the curve along direction theta.
    double polar_radius(double theta) const;
    bool contains(Vec2 x) const;
    // Smallest distance from x to the curve (sampled and refined).
    double distance(Vec2 x) const;
    // Parameter of the closest curve point to x.
    double closest_parameter(Vec2 x) const;

    double min_depth() const { return min_depth_; }

private:
    friend BodyCurve build_body(const ShapeSpec& spec);
    explicit BodyCurve(ShapeSpec spec) : spec_(std::move(spec)) {}

    double fourier_radius(double t, int derivative) const;

    ShapeSpec spec_;
    double min_depth_ = 0.0;
};

// Validates the shape (positive sizes, simple, fully submerged) and returns the curve.
BodyCurve build_body(const ShapeSpec& spec);

inline FramePoint boundary_frame(const BodyCurve& body, double t) { return body.frame(t); }

struct MaxFeasible {};
using EpsilonPolicy = std::variant<double, MaxFeasible>;

struct GeometryBox {
    double L = 0.0;      // max |x1| on the body
    double h = 0.0;      // min x2
    double H = 0.0;      // max x2
    double kappa = 0.0;  // max |curvature|
    std::optional<double> epsilon;
};

// Extremes over the curve. With MaxFeasible, epsilon is left empty when no value in (0, h]
// satisfies Condition 2.
GeometryBox geometry_box(const BodyCurve& body, EpsilonPolicy policy = MaxFeasible{});

// Maximizes f over the periodic parameter: dense sampling followed by local refinement.
struct Extremum {
    double t = 0.0;
    double value = 0.0;
};
template <class F>
Extremum maximize_periodic(F&& f, int samples);

}  // namespace wavebound

#include "wavebound/detail/maximize.hpp"
