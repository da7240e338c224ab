#include "wavebound/greens.hpp"

#include <array>
#include <string>

#include <Eigen/Core>

#include "wavebound/errors.hpp"
#include "wavebound/expint.hpp"
#include "wavebound/quadrature.hpp"

namespace wavebound {

SourcePotential::SourcePotential(double nu, GreenMethod method, double accuracy)
    : nu_(nu), method_(method), accuracy_(accuracy)
{
    if (!(nu > 0.0)) throw ParameterError("source potential: nu must be positive");
    if (!(accuracy > 0.0)) throw ParameterError("source potential: accuracy must be positive");
}

GreenValue SourcePotential::value_and_gradient(Vec2 x, Vec2 xi) const
{
    if (!(xi.x2 > 0.0)) throw DomainError("source must lie below the free surface");
    if (x.x2 < 0.0) throw DomainError("evaluation point above the free surface");
    if (x == xi) throw EvaluationError("source potential is singular at x = xi");
    return method_ == GreenMethod::closed_form ? evaluate(x, xi, false) : principal_value(x, xi, false);
}

GreenValue SourcePotential::regular(Vec2 x, Vec2 xi) const
{
    if (!(xi.x2 > 0.0)) throw DomainError("source must lie below the free surface");
    return method_ == GreenMethod::closed_form ? evaluate(x, xi, true) : principal_value(x, xi, true);
}

GreenValue SourcePotential::surface_source(Vec2 x, double t) const
{
    const Vec2 xi{t, 0.0};
    if (x == xi) throw EvaluationError("source potential is singular at x = xi");
    return evaluate(x, xi, false);
}

// (1/2pi) ln(r/r1) + (1/pi) Re[e^{-z} Ei(z)] + i e^{-nu y} cos(nu X),  z = nu (y + i X)
GreenValue SourcePotential::evaluate(Vec2 x, Vec2 xi, bool drop_log) const
{
    const double X = x.x1 - xi.x1;
    const double y = x.x2 + xi.x2;
    const double d = x.x2 - xi.x2;
    const double r1sq = X * X + y * y;
    const cplx z(nu_ * y, nu_ * X);
    const cplx phi = scaled_ei(z);
    const cplx dphi = -phi + 1.0 / z;
    const double decay = std::exp(-nu_ * y);
    const double c = std::cos(nu_ * X), s = std::sin(nu_ * X);

    GreenValue g;
    double log_part = -std::log(r1sq) / (4.0 * pi);
    double gx1 = -X / r1sq / (2.0 * pi);
    double gx2 = -y / r1sq / (2.0 * pi);
    if (!drop_log) {
        const double rsq = X * X + d * d;
        log_part += std::log(rsq) / (4.0 * pi);
        gx1 += X / rsq / (2.0 * pi);
        gx2 += d / rsq / (2.0 * pi);
    }
    g.value = log_part + phi.real() / pi + cplx(0.0, decay * c);
    g.gradient.x1 = gx1 + (dphi * cplx(0.0, nu_)).real() / pi + cplx(0.0, -nu_ * decay * s);
    g.gradient.x2 = gx2 + (dphi * nu_).real() / pi + cplx(0.0, -nu_ * decay * c);
    return g;
}

// Same kernel with Re[e^{-z} Ei(z)] replaced by the principal value
//   -PV int_0^inf e^{-k y} cos(k X) / (k - nu) dk,
// evaluated by subtracting the pole on [0, 2 nu] and integrating the tail directly.
GreenValue SourcePotential::principal_value(Vec2 x, Vec2 xi, bool drop_log) const
{
    using V3 = Eigen::Vector3d;
    const double X = x.x1 - xi.x1;
    const double y = x.x2 + xi.x2;
    const double d = x.x2 - xi.x2;
    if (!(y > 0.0)) throw EvaluationError("principal value path needs x2 + xi2 > 0");
    const double nu = nu_;

    // h(k) = e^{-k y} (cos kX, -k sin kX, -k cos kX): integrand numerators for P, dP/dx1, dP/dx2
    auto h = [=](double k) {
        const double e = std::exp(-k * y), c = std::cos(k * X), s = std::sin(k * X);
        return V3(e * c, -k * e * s, -k * e * c);
    };
    const V3 hp = h(nu);
    auto near = [&](double k) -> V3 { return (h(k) - hp) / (k - nu); };
    auto tail = [&](double k) -> V3 { return h(k) / (k - nu); };

    const double tol = 0.1 * accuracy_;
    auto a = integrate_adaptive<V3>(near, 0.0, nu, tol, 1e-14, 4);
    auto b = integrate_adaptive<V3>(near, nu, 2.0 * nu, tol, 1e-14, 4);
    const double kmax = 2.0 * nu + 45.0 / y;
    const double wave = std::abs(X) > 0.0 ? pi / std::abs(X) : kmax;
    const int pieces = int(std::min(20000.0, std::ceil((kmax - 2.0 * nu) / std::min(wave, 1.0 / y))));
    auto t = integrate_adaptive<V3>(tail, 2.0 * nu, kmax, tol, 1e-14, std::max(pieces, 4), 4 * pieces + 4000);
    const double err = a.error + b.error + t.error;
    if (!a.converged || !b.converged || !t.converged)
        throw EvaluationError("principal value quadrature missed the accuracy target, achieved " + std::to_string(err), err);
    const V3 P = a.value + b.value + t.value;

    const double decay = std::exp(-nu * y);
    const double c = std::cos(nu * X), s = std::sin(nu * X);
    const double r1sq = X * X + y * y;
    GreenValue g;
    double log_part = -std::log(r1sq) / (4.0 * pi);
    double gx1 = -X / r1sq / (2.0 * pi);
    double gx2 = -y / r1sq / (2.0 * pi);
    if (!drop_log) {
        const double rsq = X * X + d * d;
        log_part += std::log(rsq) / (4.0 * pi);
        gx1 += X / rsq / (2.0 * pi);
        gx2 += d / rsq / (2.0 * pi);
    }
    g.value = log_part - P[0] / pi + cplx(0.0, decay * c);
    g.gradient.x1 = gx1 - P[1] / pi + cplx(0.0, -nu * decay * s);
    g.gradient.x2 = gx2 - P[2] / pi + cplx(0.0, -nu * decay * c);
    return g;
}

cplx green_value(Vec2 x, Vec2 xi, double nu) { return SourcePotential(nu).value(x, xi); }

CVec2 green_gradient(Vec2 x, Vec2 xi, double nu) { return SourcePotential(nu).gradient(x, xi); }

FarFieldAmplitudes source_far_field(Vec2 xi, double nu)
{
    if (!(xi.x2 > 0.0)) throw DomainError("source must lie below the free surface");
    if (!(nu > 0.0)) throw ParameterError("nu must be positive");
    const double a = std::exp(-nu * xi.x2);
    return {cplx(0.0, a) * std::polar(1.0, nu * xi.x1), cplx(0.0, a) * std::polar(1.0, -nu * xi.x1)};
}

}  // namespace wavebound
