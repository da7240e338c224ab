#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wavebound/geometry.hpp"
#include "wavebound/types.hpp"

namespace wavebound {

// amplitude * (1 - |x - center|^2 / radius^2)^3 on the disc, zero outside.
struct VolumeBump {
    Vec2 center;
    double radius = 1.0;
    cplx amplitude = 1.0;

    cplx value(Vec2 x) const;
};

// amplitude * (1 - (x1 - center)^2 / radius^2)^3 on the interval, zero outside.
struct SurfaceBump {
    double center = 0.0;
    double radius = 1.0;
    cplx amplitude = 1.0;

    cplx value(double x1) const;
    cplx derivative(double x1) const;
};

// g1(t) = a0 + sum_k cos_k cos(k t) + sin_k sin(k t) in the curve parameter.
struct FourierProfile {
    cplx a0 = 0.0;
    std::vector<cplx> cos;
    std::vector<cplx> sin;
};

struct PointSource {
    Vec2 position;
    cplx strength = 1.0;
};

// g1 = d/dn of sum_k strength_k G(x; position_k), sources inside the body.
// The exact field is then known everywhere in the fluid.
struct SourceField {
    std::vector<PointSource> sources;
};

using G1Spec = std::variant<FourierProfile, SourceField>;

FourierProfile named_profile(const std::string& name, cplx amplitude = 1.0);

struct BoundaryData {
    std::vector<VolumeBump> f;
    G1Spec g1 = FourierProfile{};
    std::vector<SurfaceBump> g2;

    cplx f_value(Vec2 x) const;
    cplx g2_value(double x1) const;
    cplx g2_derivative(double x1) const;
    // g1 at parameters t_j = 2 pi j / n.
    std::vector<cplx> g1_nodes(const BodyCurve& body, double nu, int n) const;
    bool is_zero() const;
    // Largest |x1| and x2 reached by any support.
    double support_extent() const;

    BoundaryData scaled(cplx s) const;
};

struct WeightedPoint {
    Vec2 x;
    double w;
};

// Product rule over the bump disc (Gauss in radius, trapezoid in angle); weights include
// the area element but not the bump profile.
std::vector<WeightedPoint> disc_nodes(const VolumeBump& b);

// Throws ParameterError for overlapping or misplaced supports, or sources outside the body.
void validate_data(const BoundaryData& data, const BodyCurve& body);

// Exact field of a SourceField at x (value and gradient).
struct FieldSample {
    cplx value;
    CVec2 gradient;
};
FieldSample source_field(const SourceField& s, double nu, Vec2 x);

}  // namespace wavebound
