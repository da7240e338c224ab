#include "wavebound/boundary_data.hpp"

#include <cmath>

#include "wavebound/errors.hpp"
#include "wavebound/greens.hpp"
#include "wavebound/quadrature.hpp"

namespace wavebound {

cplx VolumeBump::value(Vec2 x) const
{
    const Vec2 d = x - center;
    const double q = dot(d, d) / (radius * radius);
    if (q >= 1.0) return 0.0;
    const double w = 1.0 - q;
    return amplitude * (w * w * w);
}

cplx SurfaceBump::value(double x1) const
{
    const double q = (x1 - center) / radius;
    if (std::abs(q) >= 1.0) return 0.0;
    const double w = 1.0 - q * q;
    return amplitude * (w * w * w);
}

cplx SurfaceBump::derivative(double x1) const
{
    const double q = (x1 - center) / radius;
    if (std::abs(q) >= 1.0) return 0.0;
    const double w = 1.0 - q * q;
    return amplitude * (-6.0 * q * w * w / radius);
}

FourierProfile named_profile(const std::string& name, cplx amplitude)
{
    FourierProfile p;
    if (name == "zero") return p;
    if (name == "constant") p.a0 = amplitude;
    else if (name == "cos") p.cos = {amplitude};
    else if (name == "sin") p.sin = {amplitude};
    else throw ParameterError("unknown g1 profile '" + name + "'");
    return p;
}

cplx BoundaryData::f_value(Vec2 x) const
{
    cplx s = 0.0;
    for (const auto& b : f) s += b.value(x);
    return s;
}

cplx BoundaryData::g2_value(double x1) const
{
    cplx s = 0.0;
    for (const auto& b : g2) s += b.value(x1);
    return s;
}

cplx BoundaryData::g2_derivative(double x1) const
{
    cplx s = 0.0;
    for (const auto& b : g2) s += b.derivative(x1);
    return s;
}

FieldSample source_field(const SourceField& s, double nu, Vec2 x)
{
    const SourcePotential g(nu);
    FieldSample out{0.0, {}};
    for (const auto& p : s.sources) {
        const auto v = g.value_and_gradient(x, p.position);
        out.value += p.strength * v.value;
        out.gradient += v.gradient * p.strength;
    }
    return out;
}

std::vector<cplx> BoundaryData::g1_nodes(const BodyCurve& body, double nu, int n) const
{
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * pi * j / n;
        if (const auto* p = std::get_if<FourierProfile>(&g1)) {
            cplx v = p->a0;
            for (std::size_t k = 0; k < p->cos.size(); ++k) v += p->cos[k] * std::cos((k + 1.0) * t);
            for (std::size_t k = 0; k < p->sin.size(); ++k) v += p->sin[k] * std::sin((k + 1.0) * t);
            out[j] = v;
        } else {
            const auto fr = body.frame(t);
            out[j] = dot(source_field(std::get<SourceField>(g1), nu, fr.point).gradient, fr.normal);
        }
    }
    return out;
}

bool BoundaryData::is_zero() const
{
    auto zero = [](cplx c) { return c == cplx(0.0); };
    for (const auto& b : f)
        if (!zero(b.amplitude)) return false;
    for (const auto& b : g2)
        if (!zero(b.amplitude)) return false;
    if (const auto* p = std::get_if<FourierProfile>(&g1)) {
        if (!zero(p->a0)) return false;
        for (auto c : p->cos)
            if (!zero(c)) return false;
        for (auto c : p->sin)
            if (!zero(c)) return false;
        return true;
    }
    for (const auto& s : std::get<SourceField>(g1).sources)
        if (!zero(s.strength)) return false;
    return true;
}

double BoundaryData::support_extent() const
{
    double e = 0.0;
    for (const auto& b : f) e = std::max({e, std::abs(b.center.x1) + b.radius, b.center.x2 + b.radius});
    for (const auto& b : g2) e = std::max(e, std::abs(b.center) + b.radius);
    return e;
}

BoundaryData BoundaryData::scaled(cplx s) const
{
    BoundaryData d = *this;
    for (auto& b : d.f) b.amplitude *= s;
    for (auto& b : d.g2) b.amplitude *= s;
    if (auto* p = std::get_if<FourierProfile>(&d.g1)) {
        p->a0 *= s;
        for (auto& c : p->cos) c *= s;
        for (auto& c : p->sin) c *= s;
    } else {
        for (auto& q : std::get<SourceField>(d.g1).sources) q.strength *= s;
    }
    return d;
}

std::vector<WeightedPoint> disc_nodes(const VolumeBump& b)
{
    const auto& gl = gauss_legendre(16);
    constexpr int n_theta = 32;
    std::vector<WeightedPoint> out;
    out.reserve(gl.nodes.size() * n_theta);
    for (std::size_t a = 0; a < gl.nodes.size(); ++a) {
        const double s = 0.5 * b.radius * (gl.nodes[a] + 1.0);
        const double ws = 0.5 * b.radius * gl.weights[a] * s * (2.0 * pi / n_theta);
        for (int k = 0; k < n_theta; ++k) {
            const double th = 2.0 * pi * k / n_theta;
            out.push_back({b.center + Vec2{std::cos(th), std::sin(th)} * s, ws});
        }
    }
    return out;
}

void validate_data(const BoundaryData& data, const BodyCurve& body)
{
    for (std::size_t i = 0; i < data.f.size(); ++i) {
        const auto& b = data.f[i];
        if (!(b.radius > 0.0)) throw ParameterError("f bump radius must be positive");
        if (!(b.center.x2 - b.radius > 0.0)) throw ParameterError("f bump touches the free surface");
        if (body.contains(b.center) || body.distance(b.center) <= b.radius)
            throw ParameterError("f bump overlaps the body");
        for (std::size_t j = 0; j < i; ++j)
            if (norm(b.center - data.f[j].center) < b.radius + data.f[j].radius)
                throw ParameterError("f bumps must have disjoint supports");
    }
    for (std::size_t i = 0; i < data.g2.size(); ++i) {
        const auto& b = data.g2[i];
        if (!(b.radius > 0.0)) throw ParameterError("g2 bump radius must be positive");
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(b.center - data.g2[j].center) < b.radius + data.g2[j].radius)
                throw ParameterError("g2 bumps must have disjoint supports");
    }
    if (const auto* s = std::get_if<SourceField>(&data.g1)) {
        for (const auto& p : s->sources)
            if (!body.contains(p.position) || body.distance(p.position) < 1e-6)
                throw ParameterError("g1 point sources must lie strictly inside the body");
    }
}

}  // namespace wavebound
