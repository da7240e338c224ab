#include "wavebound/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "wavebound/conditions.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/quadrature.hpp"

namespace wavebound {

double Cutoff::value(double t) const
{
    if (t <= 1.0) return 0.0;
    if (t >= 3.0) return 1.0;
    if (kind == CutoffKind::quintic) {
        const double s = 0.5 * (t - 1.0);
        return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
    }
    return t < 2.0 ? 0.5 * (t - 1.0) * (t - 1.0) : 1.0 - 0.5 * (3.0 - t) * (3.0 - t);
}

double Cutoff::d1(double t) const
{
    if (t <= 1.0 || t >= 3.0) return 0.0;
    if (kind == CutoffKind::quintic) {
        const double s = 0.5 * (t - 1.0);
        return 15.0 * s * s * (1.0 - s) * (1.0 - s);
    }
    return t < 2.0 ? t - 1.0 : 3.0 - t;
}

double Cutoff::d2(double t) const
{
    if (t <= 1.0 || t >= 3.0) return 0.0;
    if (kind == CutoffKind::quintic) {
        const double s = 0.5 * (t - 1.0);
        return 15.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
    }
    return t < 2.0 ? 1.0 : -1.0;
}

FieldSample WaveMode::plus(Vec2 x) const
{
    const double a = x.x1 * gamma1_sq;
    const double chi = cutoff.value(a);
    if (chi == 0.0 && cutoff.d1(a) == 0.0) return {0.0, {}};
    const cplx e = std::exp(cplx(-nu * x.x2, -nu * x.x1));
    return {chi * e, {(gamma1_sq * cutoff.d1(a) - cplx(0.0, nu) * chi) * e, -nu * chi * e}};
}

FieldSample WaveMode::minus(Vec2 x) const
{
    const double a = -x.x1 * gamma1_sq;
    const double chi = cutoff.value(a);
    if (chi == 0.0 && cutoff.d1(a) == 0.0) return {0.0, {}};
    const cplx e = std::exp(cplx(-nu * x.x2, nu * x.x1));
    return {chi * e, {(-gamma1_sq * cutoff.d1(a) + cplx(0.0, nu) * chi) * e, -nu * chi * e}};
}

cplx WaveMode::laplacian_plus(Vec2 x) const
{
    const double a = x.x1 * gamma1_sq;
    const cplx e = std::exp(cplx(-nu * x.x2, -nu * x.x1));
    return (gamma1_sq * gamma1_sq * cutoff.d2(a) - cplx(0.0, 2.0 * nu * gamma1_sq * cutoff.d1(a))) * e;
}

cplx WaveMode::laplacian_minus(Vec2 x) const
{
    const double a = -x.x1 * gamma1_sq;
    const cplx e = std::exp(cplx(-nu * x.x2, nu * x.x1));
    return (gamma1_sq * gamma1_sq * cutoff.d2(a) - cplx(0.0, 2.0 * nu * gamma1_sq * cutoff.d1(a))) * e;
}

namespace {

// Integral over x2 in (0, inf) of phi(x2) e^{-2 nu x2}, phi slowly varying.
template <class F>
double depth_integral(double nu, F&& phi)
{
    const auto& gl = gauss_legendre(16);
    double sum = 0.0;
    for (double a = 0.0, w = 0.5 / nu; a < 40.0 / nu; a += w, w *= 1.6) {
        const double b = std::min(a + w, 40.0 / nu);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double y = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[k];
            sum += 0.5 * (b - a) * gl.weights[k] * phi(y) * std::exp(-2.0 * nu * y);
        }
    }
    return sum;
}

// Integral over x1 in (a, inf) of psi(x1), psi = O(x1^-2), via x1 = a / s.
template <class F>
double far_integral(double a, F&& psi)
{
    const auto& gl = gauss_legendre(32);
    double sum = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
        const double s = 0.5 * (gl.nodes[k] + 1.0);
        sum += 0.5 * gl.weights[k] * psi(a / s) * a / (s * s);
    }
    return sum;
}

struct ShellSum {
    double total = 0.0, inner = 0.0, outer = 0.0;
    void add(double v, int shell)
    {
        total += v;
        if (shell == 0) inner += v;
        if (shell == 1) outer += v;
    }
    // Geometric continuation of the last two shells (radius ratio 3/2) beyond the truncation.
    double tail() const
    {
        if (outer == 0.0) return 0.0;
        const double q = outer / inner;
        if (inner != 0.0 && q > 0.0 && q < 0.9) return outer * q / (1.0 - q);
        return outer;
    }
};

double relative_residual(double lhs, double rhs)
{
    if (lhs == rhs) return 0.0;
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

double relative_residual(cplx lhs, cplx rhs)
{
    if (lhs == rhs) return 0.0;
    return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

double growth(double sq, double tail)
{
    const double s = std::sqrt(std::max(sq, 0.0));
    return s - std::sqrt(std::max(sq - std::abs(tail), 0.0));
}

}  // namespace

WaveModeBounds wave_mode_bounds(double nu, double L, double H, Cutoff cutoff)
{
    const WeightSet ws(nu, L, H);
    const double tau = ws.tau(), g = ws.gamma1_sq();
    const auto& gl = gauss_legendre(24);

    // Transition strip [tau, 3 tau], split where the profile changes.
    double a_sq = 0.0, b_sq = 0.0;
    for (double lo : {tau, 2.0 * tau}) {
        const int panels = std::max(4, int(std::ceil(tau * nu)));
        for (int p = 0; p < panels; ++p) {
            const double a = lo + tau * p / panels, b = lo + tau * (p + 1) / panels;
            for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
                const double x1 = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[k];
                const double w = 0.5 * (b - a) * gl.weights[k];
                const double t = x1 * g;
                const double c = cutoff.value(t), c1 = cutoff.d1(t), c2 = cutoff.d2(t);
                a_sq += w * depth_integral(nu, [&](double y) {
                    const double g0 = ws.gamma0_sq({x1, y});
                    return g0 * c * c + g0 * (g * g * c1 * c1 / (nu * nu) + 2.0 * c * c);
                });
                a_sq += w * ws.gamma2_sq(x1) * c * c;
                b_sq += w * depth_integral(nu, [&](double y) {
                    return (g * g * g * g * c2 * c2 + 4.0 * nu * nu * g * g * c1 * c1) / ws.gamma0_sq({x1, y});
                });
            }
        }
    }
    // chi = 1 beyond 3 tau.
    a_sq += far_integral(3.0 * tau, [&](double x1) {
        return depth_integral(nu, [&](double y) { return 3.0 * ws.gamma0_sq({x1, y}); }) + ws.gamma2_sq(x1);
    });
    WaveModeBounds r;
    r.A = std::sqrt(2.0 * a_sq);
    r.B = std::sqrt(2.0 * b_sq);
    r.A_bound = 3.0;
    r.B_bound = 32.0 * std::sqrt(nu * tau);
    r.A_ok = r.A <= r.A_bound;
    r.B_ok = r.B <= r.B_bound;
    return r;
}

Vec2 z_field(ZField z, Vec2 x)
{
    if (z == ZField::V) return {x.x1, 0.0};
    const double r2 = dot(x, x);
    if (r2 == 0.0) return {};
    return {x.x1 * (x.x1 * x.x1 - x.x2 * x.x2) / r2, 2.0 * x.x1 * x.x1 * x.x2 / r2};
}

double z_d1_z1(ZField z, Vec2 x)
{
    if (z == ZField::V) return 1.0;
    const double a = x.x1 * x.x1, b = x.x2 * x.x2, r2 = a + b;
    return (a * a + 4.0 * a * b - b * b) / (r2 * r2);
}

Mat2 q_matrix(ZField z, Vec2 x)
{
    if (z == ZField::V) return {-2.0, 0.0, 0.0};
    const double a = x.x1 * x.x1, b = x.x2 * x.x2, r4 = (a + b) * (a + b);
    if (r4 == 0.0) return {0.0, 0.0, 0.0};
    return {-8.0 * a * b / r4, 4.0 * x.x1 * x.x2 * (a - b) / r4, -2.0 * (a - b) * (a - b) / r4};
}

QFormResult q_form_check(ZField z, std::size_t samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-10.0, 10.0), uy(0.0, 10.0);
    std::normal_distribution<double> nx;
    QFormResult r;
    r.samples = samples;
    r.max_normalized = -INFINITY;
    r.min_normalized = INFINITY;
    for (std::size_t i = 0; i < samples; ++i) {
        Vec2 x{ux(rng), uy(rng)};
        if (dot(x, x) < 1e-8) x = {1.0, 1.0};
        const Vec2 xi{nx(rng), nx(rng)};
        const Mat2 q = q_matrix(z, x);
        const double form = q.a11 * xi.x1 * xi.x1 + 2.0 * q.a12 * xi.x1 * xi.x2 + q.a22 * xi.x2 * xi.x2;
        const double nrm = dot(xi, xi);
        r.max_normalized = std::max(r.max_normalized, form / nrm);
        r.min_normalized = std::min(r.min_normalized, form / nrm);
        if (i < 200) {
            // Central differences of Z, step scaled to |x|.
            const double h = 1e-5 * std::max(1.0, norm(x));
            auto d = [&](int k, Vec2 p) {
                const Vec2 e = k == 0 ? Vec2{h, 0.0} : Vec2{0.0, h};
                return (z_field(z, p + e) - z_field(z, p - e)) * (0.5 / h);
            };
            const Vec2 d1 = d(0, x), d2 = d(1, x);  // d/dx1 Z, d/dx2 Z
            const double div = d1.x1 + d2.x2;
            const Mat2 f{div - 1.0 - 2.0 * d1.x1, -(d1.x2 + d2.x1), div - 1.0 - 2.0 * d2.x2};
            r.fd_mismatch = std::max({r.fd_mismatch, std::abs(f.a11 - q.a11), std::abs(f.a12 - q.a12),
                                      std::abs(f.a22 - q.a22)});
        }
    }
    return r;
}

FieldAudit audit_field(const SolutionField& sol, const ScatteringResult& sc, AuditOptions opt)
{
    const BodyCurve& body = sol.body();
    const BoundaryData& data = sol.data();
    const double nu = sol.nu();
    const GeometryBox box = geometry_box(body, body.min_depth());
    const WeightSet ws(nu, box.L, box.H);
    const double tau = ws.tau(), g = ws.gamma1_sq();
    const double R = opt.R > 0.0 ? opt.R : default_truncation(nu, box);
    if (data.support_extent() > 0.5 * R) throw ParameterError("truncation radius does not clear the data supports");
    const DomainQuadrature dq = build_domain_quadrature(body, box, nu, R, opt.level);

    const WaveMode wm{nu, g, opt.cutoff};
    const cplx dp = sc.d_plus, dm = sc.d_minus;
    auto wave = [&](Vec2 x) {
        const auto p = wm.plus(x), m = wm.minus(x);
        return FieldSample{dp * p.value + dm * m.value, p.gradient * dp + m.gradient * dm};
    };
    auto wave_lap = [&](Vec2 x) { return dp * wm.laplacian_plus(x) + dm * wm.laplacian_minus(x); };
    auto zdot = [](ZField z, Vec2 x, const CVec2& grad) { return dot(grad, z_field(z, x)); };

    FieldAudit out;
    out.scattering = sc;
    NormReport& nr = out.norms;
    nr.R = R;
    nr.level = opt.level;
    nr.nodes = dq.size();

    // Fluid region.
    const auto field = evaluate_many(sol, dq.points, opt.execution, true);
    ShellSum u0, u1, v0, v0g, v1, vx1, qw;
    for (std::size_t i = 0; i < dq.size(); ++i) {
        const Vec2 x = dq.points[i];
        const double w = dq.weights[i];
        const int sh = dq.shell[i];
        const auto wv = wave(x);
        const cplx v = field[i].value - wv.value;
        const CVec2 gv = field[i].gradient - wv.gradient;
        const double g0 = ws.gamma0_sq(x);
        u0.add(w * g0 * std::norm(field[i].value), sh);
        u1.add(w * g0 * norm_sq(field[i].gradient), sh);
        v0.add(w * g0 * std::norm(v), sh);
        v0g.add(w * g0 * norm_sq(gv), sh);
        v1.add(w * norm_sq(gv), sh);
        vx1.add(w * std::norm(gv.x1), sh);
        const Mat2 q = q_matrix(ZField::W, x);
        qw.add(w * (q.a11 * std::norm(gv.x1) + 2.0 * q.a12 * std::real(gv.x1 * std::conj(gv.x2)) +
                    q.a22 * std::norm(gv.x2)),
               sh);
    }
    const double d_sq = std::norm(dp) + std::norm(dm);
    // per side; amplitudes |d+|^2 and |d-|^2 enter through d_sq
    const double t0 = far_integral(R, [&](double x1) {
        return depth_integral(nu, [&](double y) { return ws.gamma0_sq({x1, y}); });
    });
    const double wave_u0 = d_sq * t0;
    const double wave_u1 = 2.0 * nu * nu * d_sq * t0;
    const double wave_gamma = d_sq * (0.5 * pi - std::atan(nu * R));

    // Free surface.
    std::vector<Vec2> sp(dq.surface_x.size());
    for (std::size_t i = 0; i < sp.size(); ++i) sp[i] = {dq.surface_x[i], 0.0};
    const auto sfield = evaluate_many(sol, sp, opt.execution, false);
    double gu = 0.0, gv2 = 0.0, gvu = 0.0, gz_w = 0.0, gz_v = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) {
        const double w = dq.surface_w[i];
        const cplx v = sfield[i].value - wave(sp[i]).value;
        gu += w * ws.gamma2_sq(sp[i].x1) * std::norm(sfield[i].value);
        gv2 += w * std::norm(v);
        gvu += w * ws.gamma2_sq(sp[i].x1) * std::norm(v);
        gz_w += w * (z_d1_z1(ZField::W, sp[i]) - 1.0) * std::norm(v);
        gz_v += w * (z_d1_z1(ZField::V, sp[i]) - 1.0) * std::norm(v);
    }

    // Body boundary: v = u there since the cutoff vanishes for |x1| < tau.
    double s_u = 0.0, s_g1 = 0.0, s_xg1 = 0.0, s_wn = 0.0, s_vn = 0.0;
    cplx green_s = 0.0, energy_s = 0.0;
    double intid_w_s = 0.0, intid_v_s = 0.0;
    for (int j = 0; j < sol.panels(); ++j) {
        const auto& nd = sol.nodes()[j];
        const double w = sol.weight() * nd.speed;
        const cplx u = sol.trace()[j], us = sol.trace_tangential()[j];
        const cplx g1 = sol.g1()[j], g1s = sol.g1_tangential()[j];
        s_u += w * std::norm(u);
        s_g1 += w * std::norm(g1);
        s_xg1 += w * nd.point.x1 * nd.point.x1 * std::norm(g1s);
        s_wn += w * std::norm(us) * w_dot_n(nd);
        s_vn += w * std::norm(us) * nd.point.x1 * nd.normal.x1;
        green_s += w * g1 * std::conj(u);
        energy_s += w * g1 * std::conj(u);
        for (ZField z : {ZField::W, ZField::V}) {
            const Vec2 Z = z_field(z, nd.point);
            const double term = std::real(std::conj(g1) * (dot(Z, nd.normal) * g1 + 2.0 * dot(Z, nd.tangent) * us + u));
            (z == ZField::W ? intid_w_s : intid_v_s) += w * term;
        }
    }

    // Volume data discs.
    double f_norm = 0.0, f1_cross = 0.0;
    cplx green_f = 0.0, energy_f = 0.0;
    double intid_w_f = 0.0, intid_v_f = 0.0;
    for (const auto& b : data.f) {
        const auto nodes = disc_nodes(b);
        std::vector<Vec2> pts;
        for (const auto& p : nodes) pts.push_back(p.x);
        const auto ff = evaluate_many(sol, pts, opt.execution, true);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Vec2 x = nodes[i].x;
            const double w = nodes[i].w;
            const cplx f = b.value(x);
            const auto wv = wave(x);
            const cplx v = ff[i].value - wv.value;
            const CVec2 gv = ff[i].gradient - wv.gradient;
            f_norm += w * std::norm(f) / ws.gamma0_sq(x);
            f1_cross += w * 2.0 * std::real(std::conj(f) * wave_lap(x)) / ws.gamma0_sq(x);
            green_f += w * f * std::conj(ff[i].value);
            energy_f += w * f * std::conj(v);
            intid_w_f += w * 2.0 * std::real(std::conj(f) * (zdot(ZField::W, x, gv) + 0.5 * v));
            intid_v_f += w * 2.0 * std::real(std::conj(f) * (zdot(ZField::V, x, gv) + 0.5 * v));
        }
    }

    // Surface data.
    double g2_norm = 0.0, g2_dnorm = 0.0, intid_g2 = 0.0;
    cplx green_g2 = 0.0, energy_g2 = 0.0;
    for (const auto& b : data.g2) {
        const auto& gl = gauss_legendre(48);
        std::vector<Vec2> pts;
        for (double s : gl.nodes) pts.push_back({b.center + b.radius * s, 0.0});
        const auto gf = evaluate_many(sol, pts, opt.execution, false);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const double x1 = pts[k].x1, w = b.radius * gl.weights[k];
            const cplx g2 = data.g2_value(x1), g2d = data.g2_derivative(x1);
            const cplx v = gf[k].value - wave(pts[k]).value;
            g2_norm += w * std::norm(g2) / ws.gamma2_sq(x1);
            g2_dnorm += w * x1 * x1 * std::norm(g2d);
            green_g2 += w * g2 * std::conj(gf[k].value);
            energy_g2 += w * g2 * std::conj(v);
            intid_g2 -= w * std::real(std::conj(v) * (g2 + 2.0 * x1 * g2d));
        }
    }

    // Cutoff transition strips, where Laplacian(d U) is supported.
    const auto tf = evaluate_many(sol, dq.strip_points, opt.execution, true);
    double strip_norm = 0.0, intid_w_t = 0.0, intid_v_t = 0.0;
    cplx energy_t = 0.0;
    for (std::size_t i = 0; i < dq.strip_points.size(); ++i) {
        const Vec2 x = dq.strip_points[i];
        const double w = dq.strip_weights[i];
        const cplx lap = wave_lap(x);
        const auto wv = wave(x);
        const cplx v = tf[i].value - wv.value;
        const CVec2 gv = tf[i].gradient - wv.gradient;
        strip_norm += w * std::norm(lap) / ws.gamma0_sq(x);
        energy_t += w * lap * std::conj(v);
        intid_w_t += w * 2.0 * std::real(std::conj(lap) * (zdot(ZField::W, x, gv) + 0.5 * v));
        intid_v_t += w * 2.0 * std::real(std::conj(lap) * (zdot(ZField::V, x, gv) + 0.5 * v));
    }

    // Assemble norms; non-wave tails extrapolated from the outer shells.
    const double A_u0 = u0.total + wave_u0 + v0.tail();
    const double A_u1 = u1.total + wave_u1 + v0g.tail();
    const double A_v0 = v0.total + v0.tail();
    const double A_v0g = v0g.total + v0g.tail();
    const double A_v1 = v1.total + v1.tail();
    const double A_vx1 = vx1.total + vx1.tail();
    const double A_qw = qw.total + qw.tail();

    const double u_sq = A_u0 + A_u1 / (nu * nu) + g * s_u + gu + wave_gamma;
    const double rest_F = tau * (s_g1 + s_xg1) + g2_norm + g2_dnorm / nu;
    const double F_sq = f_norm + rest_F;
    const double F1_sq = f_norm + f1_cross + strip_norm + rest_F;
    const double v_sq = A_v0 + A_v1 + g * s_u + nu * gv2;
    const double vu_sq = A_v0 + A_v0g / (nu * nu) + g * s_u + gvu;
    nr.norm_u = std::sqrt(std::max(u_sq, 0.0));
    nr.norm_F = std::sqrt(std::max(F_sq, 0.0));
    nr.norm_F1 = std::sqrt(std::max(F1_sq, 0.0));
    nr.norm_v = std::sqrt(std::max(v_sq, 0.0));
    nr.norm_v_u = std::sqrt(std::max(vu_sq, 0.0));
    nr.vx1_sq = A_vx1;
    nr.s_wn = s_wn;
    nr.tail_estimate = std::max({growth(u_sq, v0.tail() + v0g.tail() / (nu * nu)),
                                 growth(v_sq, v0.tail() + v1.tail()),
                                 growth(vu_sq, v0.tail() + v0g.tail() / (nu * nu))});

    IdentityResiduals& id = out.residuals;
    const cplx green_rhs_c = green_f + green_s + green_g2;
    id.green = {"green", d_sq, 2.0 * green_rhs_c.imag(), 0.0};
    id.green.residual = relative_residual(id.green.lhs, id.green.rhs);

    const cplx energy_lhs = energy_f + energy_t + energy_s + energy_g2;
    const double energy_rhs = A_v1 - nu * gv2;
    id.energy = {"energy", energy_lhs.real(), energy_rhs, relative_residual(energy_lhs, cplx(energy_rhs))};

    const double lw = nu * gz_w - A_qw + s_wn;
    const double rw = intid_g2 + intid_w_s + intid_w_f + intid_w_t;
    id.intid_w = {"intid_W", lw, rw, relative_residual(lw, rw)};
    const double lv = nu * gz_v + 2.0 * A_vx1 + s_vn;
    const double rv = intid_g2 + intid_v_s + intid_v_f + intid_v_t;
    id.intid_v = {"intid_V", lv, rv, relative_residual(lv, rv)};
    return out;
}

NormReport compute_norms(const SolutionField& sol, const ScatteringResult& sc, AuditOptions opt)
{
    return audit_field(sol, sc, opt).norms;
}

IdentityResiduals identity_residuals(const SolutionField& sol, const ScatteringResult& sc, AuditOptions opt)
{
    return audit_field(sol, sc, opt).residuals;
}

BoundReport bound_report(const std::string& label, const FieldAudit& audit, const ConstantLedger& c)
{
    const auto& n = audit.norms;
    const auto& sc = audit.scattering;
    BoundReport r;
    r.label = label;
    r.norm_u = n.norm_u;
    r.norm_F = n.norm_F;
    r.d_sum = std::abs(sc.d_plus) + std::abs(sc.d_minus);
    r.C = c.C;
    if (n.norm_F == 0.0) {
        if (n.norm_u > 0.0 || r.d_sum > 0.0)
            throw InconsistencyError("nonzero solution for zero data: uniqueness violated");
        return r;
    }
    r.rho_u = n.norm_u / ((1.0 + c.C) * n.norm_F);
    r.rho_d = r.d_sum / (std::sqrt(1.0 + c.C) * n.norm_F);

    r.lemma1_lhs = std::norm(sc.d_plus) + std::norm(sc.d_minus);
    r.lemma1_rhs = 2.0 * n.norm_u * n.norm_F;
    r.lemma2_lhs = n.s_wn;
    r.lemma2_rhs = c.C3 * n.norm_v * n.norm_F1 + n.norm_F1 * n.norm_F1;
    r.theorem4_lhs = n.vx1_sq;
    r.theorem4_rhs = c.C5 * n.norm_v * n.norm_F1 + c.C6 * n.norm_F1 * n.norm_F1;
    r.n5_lhs = n.norm_v_u;
    r.n5_rhs = n.norm_v;
    r.lemma1 = r.lemma1_lhs <= r.lemma1_rhs;
    r.lemma2 = r.lemma2_lhs <= r.lemma2_rhs;
    r.theorem4 = r.theorem4_lhs <= r.theorem4_rhs;
    r.n5 = r.n5_lhs <= r.n5_rhs;
    return r;
}

}  // namespace wavebound
