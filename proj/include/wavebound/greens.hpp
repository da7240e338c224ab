#pragma once

#include "wavebound/types.hpp"

namespace wavebound {

enum class GreenMethod { closed_form, principal_value };

struct GreenValue {
    cplx value;
    CVec2 gradient;  // with respect to x
};

// Deep-water source potential G(x; xi): Laplace G = delta at xi, (-d/dx2 - nu) G = 0 on x2 = 0,
// outgoing as e^{-i nu |x1| - nu x2}. Behaves like (1/2pi) ln|x - xi| near the source.
class SourcePotential {
public:
    explicit SourcePotential(double nu, GreenMethod method = GreenMethod::closed_form, double accuracy = 1e-10);

    double nu() const { return nu_; }
    GreenMethod method() const { return method_; }
    double accuracy() const { return accuracy_; }

    cplx value(Vec2 x, Vec2 xi) const { return value_and_gradient(x, xi).value; }
    CVec2 gradient(Vec2 x, Vec2 xi) const { return value_and_gradient(x, xi).gradient; }
    // Requires xi2 > 0, x2 >= 0, x != xi.
    GreenValue value_and_gradient(Vec2 x, Vec2 xi) const;
    // G minus (1/2pi) ln|x - xi|, finite at x = xi.
    GreenValue regular(Vec2 x, Vec2 xi) const;
    // Source on the free surface at (t, 0); x must differ from it.
    GreenValue surface_source(Vec2 x, double t) const;

private:
    GreenValue evaluate(Vec2 x, Vec2 xi, bool drop_log) const;
    GreenValue principal_value(Vec2 x, Vec2 xi, bool drop_log) const;

    double nu_;
    GreenMethod method_;
    double accuracy_;
};

cplx green_value(Vec2 x, Vec2 xi, double nu);
CVec2 green_gradient(Vec2 x, Vec2 xi, double nu);

struct FarFieldAmplitudes {
    cplx plus;   // coefficient of e^{-i nu x1 - nu x2} as x1 -> +inf
    cplx minus;  // coefficient of e^{+i nu x1 - nu x2} as x1 -> -inf
};

FarFieldAmplitudes source_far_field(Vec2 xi, double nu);

}  // namespace wavebound
