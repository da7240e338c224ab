#include "wavebound/solver.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>
#include <string>

#include "wavebound/errors.hpp"
#include "wavebound/quadrature.hpp"

namespace wavebound {

void set_thread_count(int threads)
{
    if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace {

using V3 = Eigen::Vector3cd;

constexpr double near_factor = 6.0;

// c_k for k = -N/2 .. N/2-1, stored at k + N/2.
std::vector<cplx> fourier_coefficients(const std::vector<cplx>& v)
{
    const int n = int(v.size());
    std::vector<cplx> c(n, 0.0);
    for (int k = -n / 2; k < n / 2; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < n; ++j) s += v[j] * std::polar(1.0, -2.0 * pi * double(k) * j / n);
        c[k + n / 2] = s / double(n);
    }
    return c;
}

FieldSample& add_scaled(FieldSample& a, const FieldSample& b, cplx s)
{
    a.value += s * b.value;
    a.gradient += b.gradient * s;
    return a;
}

// int_r^rho (1 - s^2/rho^2)^3 s ln s ds
double bump_log_moment(double r, double rho)
{
    auto P = [](int k, double s) {
        if (s <= 0.0) return 0.0;
        const double m = 2.0 * k + 2.0;
        return std::pow(s, m) * (std::log(s) / m - 1.0 / (m * m));
    };
    static constexpr double binom[4] = {1.0, -3.0, 3.0, -1.0};
    double total = 0.0;
    for (int k = 0; k < 4; ++k) total += binom[k] * std::pow(rho, -2.0 * k) * (P(k, rho) - P(k, r));
    return total;
}

FieldSample volume_bump_field(const VolumeBump& b, const SourcePotential& g, Vec2 x, bool with_gradient)
{
    // Newtonian part in closed form. The rest of the kernel is harmonic in the source point over
    // the fluid half-plane, so by the mean-value property the radial bump integrates it to
    // (bump mass) * (its value at the center).
    const Vec2 d = x - b.center;
    const double r = norm(d);
    const double q = std::min(r / b.radius, 1.0);
    const double mass = b.radius * b.radius * (1.0 - std::pow(1.0 - q * q, 4)) / 8.0;
    FieldSample out{0.0, {}};
    out.value = b.amplitude * ((r > 0.0 ? std::log(r) * mass : 0.0) + bump_log_moment(std::min(r, b.radius), b.radius));
    if (with_gradient && r > 0.0) out.gradient = CVec2{d.x1, d.x2} * (b.amplitude * mass / (r * r));
    const auto reg = g.regular(x, b.center);
    const cplx total = b.amplitude * (pi * b.radius * b.radius / 4.0);
    out.value += total * reg.value;
    if (with_gradient) out.gradient += reg.gradient * total;
    return out;
}

FieldSample surface_bump_field(const SurfaceBump& b, const SourcePotential& g, Vec2 x, bool with_gradient)
{
    const double lo = b.center - b.radius, hi = b.center + b.radius;
    // On the surface the kernel gradient is not integrable. There the x1 derivative moves onto the
    // bump (the kernel depends on x1 - t) and the x2 derivative follows from the surface condition.
    const bool on_surface = x.x2 == 0.0;
    auto integrand = [&](double t) -> V3 {
        const cplx w = b.value(t);
        const auto v = g.surface_source(x, t);
        if (!with_gradient) return V3(w * v.value, 0.0, 0.0);
        if (on_surface) return V3(w * v.value, b.derivative(t) * v.value, 0.0);
        return V3(w * v.value, w * v.gradient.x1, w * v.gradient.x2);
    };
    const double tol = 1e-13 * std::abs(b.amplitude) * b.radius;
    V3 total = V3::Zero();
    auto run = [&](double a, double c) {
        if (c > a) total += integrate_adaptive<V3>(integrand, a, c, tol, 1e-12, 4, 2000).value;
    };
    if (x.x1 > lo && x.x1 < hi) {
        run(lo, x.x1);
        run(x.x1, hi);
    } else {
        run(lo, hi);
    }
    if (with_gradient && on_surface) total[2] = b.value(x.x1) - g.nu() * total[0];
    return {total[0], {total[1], total[2]}};
}

FieldSample layer_far(const SolutionField& sol, const SourcePotential& g, Vec2 x, bool with_gradient)
{
    FieldSample out{0.0, {}};
    const double w = sol.weight();
    for (int j = 0; j < sol.panels(); ++j) {
        const auto& nd = sol.nodes()[j];
        const auto v = g.value_and_gradient(x, nd.point);
        const cplx s = sol.density()[j] * (w * nd.speed);
        out.value += s * v.value;
        if (with_gradient) out.gradient += v.gradient * s;
    }
    return out;
}

// Smooth part of the kernel by the node rule; the free-space logarithm on the coarsest
// upsampled grid that resolves the distance dmin, or adaptively when none does.
FieldSample layer_near(const SolutionField& sol, const SourcePotential& g, Vec2 x, double t0, double dmin,
                       bool with_gradient)
{
    // The nearest node overestimates the distance to S by up to half a panel; Newton on
    // (p(t) - x).p'(t) = 0 finds the foot point.
    const BodyCurve& body = sol.body();
    const double step_cap = sol.weight();
    for (int it = 0; it < 30; ++it) {
        const Vec2 d = body.point(t0) - x, d1 = body.d1(t0);
        const double f = dot(d, d1), fp = dot(d1, d1) + dot(d, body.d2(t0));
        if (!(fp > 0.0)) break;
        const double step = std::clamp(-f / fp, -step_cap, step_cap);
        t0 += step;
        if (std::abs(step) < 1e-14) break;
    }
    dmin = std::min(dmin, norm(x - body.point(t0)));

    FieldSample out{0.0, {}};
    const double w = sol.weight();
    double scale = 0.0;
    for (int j = 0; j < sol.panels(); ++j) {
        const auto& nd = sol.nodes()[j];
        const auto v = g.regular(x, nd.point);
        const cplx s = sol.density()[j] * (w * nd.speed);
        scale += std::abs(s);
        out.value += s * v.value;
        if (with_gradient) out.gradient += v.gradient * s;
    }
    for (const auto& fg : sol.fine_grids()) {
        if (dmin < near_factor * fg.max_panel) continue;
        cplx val = 0.0, g1 = 0.0, g2 = 0.0;
        for (std::size_t j = 0; j < fg.points.size(); ++j) {
            const Vec2 d = x - fg.points[j];
            const double r2 = dot(d, d);
            const cplx s = fg.weighted_density[j];
            val += std::log(r2) * s;
            if (with_gradient) {
                g1 += (d.x1 / r2) * s;
                g2 += (d.x2 / r2) * s;
            }
        }
        out.value += val / (4.0 * pi);
        out.gradient += CVec2{g1, g2} * (1.0 / (2.0 * pi));
        return out;
    }
    auto integrand = [&](double t) -> V3 {
        const Vec2 p = sol.body().point(t);
        const cplx s = sol.density_at(t) * norm(sol.body().d1(t)) / (2.0 * pi);
        const Vec2 d = x - p;
        const double r2 = dot(d, d);
        if (!with_gradient) return V3(0.5 * std::log(r2) * s, 0.0, 0.0);
        return V3(0.5 * std::log(r2) * s, d.x1 / r2 * s, d.x2 / r2 * s);
    };
    const auto r = integrate_adaptive<V3>(integrand, t0 - pi, t0 + pi, 1e-12 * std::max(scale, 1e-300), 1e-11, 8,
                                          4000);
    out.value += r.value[0];
    out.gradient += CVec2{r.value[1], r.value[2]};
    return out;
}

}  // namespace

cplx SolutionField::density_at(double t) const
{
    const int n = panels();
    const cplx step = std::polar(1.0, t);
    cplx e = std::polar(1.0, -(n / 2 - 1) * t);
    cplx s = 0.0;
    for (int k = -n / 2 + 1; k < n / 2; ++k) {
        s += coeffs_[k + n / 2] * e;
        e *= step;
    }
    return s + coeffs_[0] * std::cos(0.5 * n * t);
}

std::vector<cplx> spectral_derivative(const std::vector<cplx>& values)
{
    const int n = int(values.size());
    const auto c = fourier_coefficients(values);
    std::vector<cplx> d(n, 0.0);
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * pi * j / n;
        cplx s = 0.0;
        for (int k = -n / 2 + 1; k < n / 2; ++k) s += cplx(0.0, k) * c[k + n / 2] * std::polar(1.0, k * t);
        d[j] = s;
    }
    return d;
}

Eigen::MatrixXcd assemble_matrix(const BodyCurve& body, double nu, int N, Execution exec)
{
    if (N < 16 || N % 2 != 0) throw ParameterError("panel count must be even and at least 16");
    const SourcePotential g(nu);
    std::vector<FramePoint> nodes(N);
    for (int j = 0; j < N; ++j) nodes[j] = body.frame(2.0 * pi * j / N);
    const double w = 2.0 * pi / N;
    Eigen::MatrixXcd A(N, N);
    for_each_index(std::size_t(N), exec, [&](std::size_t i) {
        const auto& xi = nodes[i];
        for (int j = 0; j < N; ++j) {
            const auto& yj = nodes[j];
            if (int(i) == j) {
                const auto reg = g.regular(xi.point, xi.point);
                A(i, j) = -0.5 + w * yj.speed * (-xi.curvature / (4.0 * pi) + dot(reg.gradient, xi.normal));
            } else {
                A(i, j) = w * yj.speed * dot(g.gradient(xi.point, yj.point), xi.normal);
            }
        }
    });
    return A;
}

FieldSample particular_field(const BoundaryData& data, double nu, Vec2 x, bool with_gradient)
{
    const SourcePotential g(nu);
    FieldSample out{0.0, {}};
    for (const auto& b : data.f) add_scaled(out, volume_bump_field(b, g, x, with_gradient), -1.0);
    for (const auto& b : data.g2) add_scaled(out, surface_bump_field(b, g, x, with_gradient), -1.0);
    return out;
}

SolutionField assemble_and_solve(const BodyCurve& body, double nu, const BoundaryData& data, int N, SolveOptions opt)
{
    if (!(nu > 0.0)) throw ParameterError("nu must be positive");
    validate_data(data, body);
    const Eigen::MatrixXcd A = assemble_matrix(body, nu, N, opt.execution);

    SolutionField sol(body, data, nu);
    sol.nodes_.resize(N);
    for (int j = 0; j < N; ++j) {
        sol.nodes_[j] = body.frame(2.0 * pi * j / N);
        sol.max_panel_ = std::max(sol.max_panel_, sol.nodes_[j].speed * 2.0 * pi / N);
    }
    sol.g1_ = data.g1_nodes(body, nu, N);
    {
        auto d = spectral_derivative(sol.g1_);
        for (int j = 0; j < N; ++j) d[j] /= sol.nodes_[j].speed;
        sol.g1_tangential_ = std::move(d);
    }

    std::vector<FieldSample> part(N, FieldSample{0.0, {}});
    const bool has_particular = !data.f.empty() || !data.g2.empty();
    if (has_particular)
        for_each_index(std::size_t(N), opt.execution,
                       [&](std::size_t j) { part[j] = particular_field(data, nu, sol.nodes_[j].point); });

    Eigen::VectorXcd rhs(N);
    for (int i = 0; i < N; ++i) rhs[i] = sol.g1_[i] - dot(part[i].gradient, sol.nodes_[i].normal);

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rcond = lu.rcond();
    sol.condition_ = rcond > 0.0 ? 1.0 / rcond : INFINITY;
    if (!(sol.condition_ <= opt.max_condition))
        throw SolverError("boundary system is singular or ill-conditioned, condition ~ " + std::to_string(sol.condition_),
                          sol.condition_);
    const Eigen::VectorXcd sigma = lu.solve(rhs);
    sol.density_.assign(sigma.data(), sigma.data() + N);
    sol.coeffs_ = fourier_coefficients(sol.density_);

    double top = 0.0, tail = 0.0;
    for (int k = -N / 2; k < N / 2; ++k) {
        const double m = std::abs(sol.coeffs_[k + N / 2]);
        top = std::max(top, m);
        if (std::abs(k) >= N / 2 - N / 8) tail = std::max(tail, m);
    }
    if (top > 0.0 && tail > 1e-6 * top)
        sol.warnings_.push_back("panel count may be too small: density tail ~ " + std::to_string(tail / top) +
                                " of its peak coefficient");

    for (int factor : {4, 16, 64, 256}) {
        SolutionField::FineGrid fg;
        fg.factor = factor;
        const int M = N * factor;
        fg.points.resize(M);
        fg.weighted_density.resize(M);
        for (int j = 0; j < M; ++j) {
            const double t = 2.0 * pi * j / M;
            const double speed = norm(body.d1(t));
            fg.points[j] = body.point(t);
            fg.weighted_density[j] = sol.density_at(t) * (speed * 2.0 * pi / M);
            fg.max_panel = std::max(fg.max_panel, speed * 2.0 * pi / M);
        }
        sol.fine_.push_back(std::move(fg));
    }

    // Trace on S with the periodic log product rule.
    const SourcePotential g(nu);
    const auto R = kress_log_weights(N);
    const double w = sol.weight();
    sol.trace_.assign(N, 0.0);
    for_each_index(std::size_t(N), opt.execution, [&](std::size_t i) {
        const auto& xi = sol.nodes_[i];
        cplx s = part[i].value;
        for (int j = 0; j < N; ++j) {
            const auto& yj = sol.nodes_[j];
            const double tdiff = 2.0 * pi * (double(i) - j) / N;
            double smooth_log;
            if (int(i) == j) {
                smooth_log = std::log(yj.speed * yj.speed);
            } else {
                const Vec2 d = xi.point - yj.point;
                const double sn = std::sin(0.5 * tdiff);
                smooth_log = std::log(dot(d, d) / (4.0 * sn * sn));
            }
            const cplx kern = R[(int(i) - j + N) % N] / (4.0 * pi) +
                              w * (smooth_log / (4.0 * pi) + g.regular(xi.point, yj.point).value);
            s += kern * sol.density_[j] * yj.speed;
        }
        sol.trace_[i] = s;
    });
    sol.trace_tangential_ = spectral_derivative(sol.trace_);
    for (int j = 0; j < N; ++j) sol.trace_tangential_[j] /= sol.nodes_[j].speed;
    return sol;
}

FieldSample evaluate_field(const SolutionField& sol, Vec2 x, bool with_gradient)
{
    if (x.x2 < 0.0) throw DomainError("point above the free surface");
    if (sol.body().contains(x)) throw DomainError("point inside the body");
    const SourcePotential g(sol.nu());
    double dmin = INFINITY;
    int jmin = 0;
    for (int j = 0; j < sol.panels(); ++j) {
        const double d = norm(x - sol.nodes()[j].point);
        if (d < dmin) dmin = d, jmin = j;
    }
    FieldSample out = dmin < near_factor * sol.max_panel()
                          ? layer_near(sol, g, x, 2.0 * pi * jmin / sol.panels(), dmin, with_gradient)
                          : layer_far(sol, g, x, with_gradient);
    if (!sol.data().f.empty() || !sol.data().g2.empty())
        add_scaled(out, particular_field(sol.data(), sol.nu(), x, with_gradient), 1.0);
    return out;
}

std::vector<FieldSample> evaluate_many(const SolutionField& sol, std::span<const Vec2> points, Execution exec,
                                       bool with_gradient)
{
    std::vector<FieldSample> out(points.size());
    for_each_index(points.size(), exec, [&](std::size_t i) { out[i] = evaluate_field(sol, points[i], with_gradient); });
    return out;
}

ScatteringResult scattering_coefficients(const SolutionField& sol, ScatterOptions opt)
{
    const double nu = sol.nu();
    ScatteringResult res;

    // Kochin integrals: layer plus particular parts.
    const double w = sol.weight();
    for (int j = 0; j < sol.panels(); ++j) {
        const auto& nd = sol.nodes()[j];
        const auto a = source_far_field(nd.point, nu);
        const cplx s = sol.density()[j] * (w * nd.speed);
        res.d_plus += s * a.plus;
        res.d_minus += s * a.minus;
    }
    for (const auto& b : sol.data().f) {
        for (const auto& p : disc_nodes(b)) {
            const cplx wf = p.w * b.value(p.x);
            const auto a = source_far_field(p.x, nu);
            res.d_plus -= wf * a.plus;
            res.d_minus -= wf * a.minus;
        }
    }
    for (const auto& b : sol.data().g2) {
        const auto& gl = gauss_legendre(48);
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double t = b.center + b.radius * gl.nodes[k];
            const cplx wg = b.radius * gl.weights[k] * b.value(t);
            res.d_plus -= wg * cplx(0.0, 1.0) * std::polar(1.0, nu * t);
            res.d_minus -= wg * cplx(0.0, 1.0) * std::polar(1.0, -nu * t);
        }
    }

    // Least-squares fit on the free surface: A e^{-+ i nu x1} + sum_m B_m (X/x1)^m.
    double extent = sol.data().support_extent();
    for (const auto& nd : sol.nodes()) extent = std::max({extent, std::abs(nd.point.x1), nd.point.x2});
    const double X = opt.far_distance > 0.0 ? opt.far_distance : std::max(40.0 / nu, 10.0 * extent);
    res.far_distance = X;
    constexpr int per_block = 8, n_powers = 5;
    std::vector<Vec2> pts;
    for (int side : {1, -1})
        for (double base : {X, 2.0 * X})
            for (int j = 0; j < per_block; ++j) pts.push_back({side * (base + j * 0.3 / nu), 0.0});
    const auto vals = evaluate_many(sol, pts, Execution::parallel, false);
    for (int side : {1, -1}) {
        const int off = side == 1 ? 0 : 2 * per_block;
        Eigen::MatrixXcd M(2 * per_block, 1 + n_powers);
        Eigen::VectorXcd b(2 * per_block);
        for (int r = 0; r < 2 * per_block; ++r) {
            const double x1 = pts[off + r].x1;
            M(r, 0) = std::polar(1.0, -side * nu * x1);
            for (int m = 0; m < n_powers; ++m) M(r, 1 + m) = std::pow(X / std::abs(x1), m + 2);
            b[r] = vals[off + r].value;
        }
        const cplx A = M.colPivHouseholderQr().solve(b)[0];
        (side == 1 ? res.far_plus : res.far_minus) = A;
    }

    const double diff = std::max(std::abs(res.d_plus - res.far_plus), std::abs(res.d_minus - res.far_minus));
    double floor = 1e-300;
    for (const auto& u : sol.trace()) floor = std::max(floor, 1e-10 * std::abs(u));
    const double size = std::max({std::abs(res.d_plus), std::abs(res.d_minus), floor});
    res.discrepancy = diff == 0.0 ? 0.0 : diff / size;
    if (res.discrepancy > opt.tolerance)
        throw ExtractionError("far-field fit and Kochin integrals disagree, relative difference " +
                                  std::to_string(res.discrepancy),
                              res.discrepancy);
    return res;
}

}  // namespace wavebound
