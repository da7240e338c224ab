#include "wavebound/domain_quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "wavebound/errors.hpp"
#include "wavebound/quadrature.hpp"

namespace wavebound {

namespace {

constexpr int inner_order = 8;
constexpr int outer_order = 6;

// Breakpoints on [a, b] with local width given by width(x).
template <class W>
std::vector<double> breaks_by(double a, double b, W&& width)
{
    std::vector<double> br{a};
    double x = a;
    while (b - x > 1e-12 * (1.0 + std::abs(b))) {
        double w = width(x);
        if (x + 1.5 * w >= b) w = b - x;
        x += w;
        br.push_back(x);
    }
    br.back() = b;
    return br;
}

void tensor_panels(const std::vector<double>& bx, const std::vector<double>& by, int order,
                   std::vector<Vec2>& pts, std::vector<double>& wts)
{
    const auto& gl = gauss_legendre(order);
    for (std::size_t i = 0; i + 1 < bx.size(); ++i) {
        const double cx = 0.5 * (bx[i] + bx[i + 1]), hx = 0.5 * (bx[i + 1] - bx[i]);
        for (std::size_t j = 0; j + 1 < by.size(); ++j) {
            const double cy = 0.5 * (by[j] + by[j + 1]), hy = 0.5 * (by[j + 1] - by[j]);
            for (int a = 0; a < order; ++a)
                for (int b = 0; b < order; ++b) {
                    pts.push_back({cx + hx * gl.nodes[a], cy + hy * gl.nodes[b]});
                    wts.push_back(hx * hy * gl.weights[a] * gl.weights[b]);
                }
        }
    }
}

// Distance from c along direction theta to the boundary of [-A, A] x [0, Y].
double ray_to_box(Vec2 c, double theta, double A, double Y)
{
    const double e1 = std::cos(theta), e2 = std::sin(theta);
    double t = INFINITY;
    if (e1 > 0) t = std::min(t, (A - c.x1) / e1);
    if (e1 < 0) t = std::min(t, (-A - c.x1) / e1);
    if (e2 > 0) t = std::min(t, (Y - c.x2) / e2);
    if (e2 < 0) t = std::min(t, -c.x2 / e2);
    return t;
}

}  // namespace

double default_truncation(double nu, const GeometryBox& box)
{
    const double tau = box.L + 1.0 / nu + box.H;
    return std::max({60.0 / nu, 3.0 * (box.L + box.H), 3.0 * tau + 4.0 / nu});
}

DomainQuadrature build_domain_quadrature(const BodyCurve& body, const GeometryBox& box, double nu, double R, int level)
{
    if (!(nu > 0.0)) throw ParameterError("nu must be positive");
    if (level < 0 || level > 4) throw ParameterError("quadrature level must be in [0, 4]");
    const double tau = box.L + 1.0 / nu + box.H;
    const double margin = std::max(0.5, 0.5 * (box.H - box.h));
    const double A = box.L + margin, Y = box.H + margin;
    if (!(R >= 3.0 * tau + 1.0 / nu) || !(R > 1.5 * std::max(A, Y)))
        throw ParameterError("truncation radius too small: need R >= 3 tau + 1/nu and R > 1.5 x the body box");

    DomainQuadrature q;
    q.R = R;
    q.box_half_width = A;
    q.box_depth = Y;
    q.level = level;
    const double scale = std::ldexp(1.0, -level);
    const double ell = 1.0 / nu;

    // Inner box: blend from S (s = 0) to the box boundary (s = 1) along rays from the body centre.
    const Vec2 c = body.center();
    std::vector<double> corners;
    for (Vec2 p : {Vec2{-A, 0.0}, Vec2{A, 0.0}, Vec2{A, Y}, Vec2{-A, Y}}) corners.push_back(std::atan2(p.x2 - c.x2, p.x1 - c.x1));
    std::sort(corners.begin(), corners.end());
    corners.push_back(corners.front() + 2.0 * pi);
    const int theta_total = int(48 / scale);
    std::vector<double> s_breaks;
    for (double s : {0.0, 0.1, 0.25, 0.5, 1.0}) s_breaks.push_back(s);
    for (int l = 0; l < level; ++l) {
        std::vector<double> finer;
        for (std::size_t i = 0; i + 1 < s_breaks.size(); ++i) {
            finer.push_back(s_breaks[i]);
            finer.push_back(0.5 * (s_breaks[i] + s_breaks[i + 1]));
        }
        finer.push_back(1.0);
        s_breaks = finer;
    }
    const auto& gl = gauss_legendre(inner_order);
    for (std::size_t k = 0; k + 1 < corners.size(); ++k) {
        const double t0 = corners[k], t1 = corners[k + 1];
        const int panels = std::max(2, int(std::ceil((t1 - t0) / (2.0 * pi) * theta_total)));
        const double dt = (t1 - t0) / panels;
        for (int p = 0; p < panels; ++p) {
            for (int a = 0; a < inner_order; ++a) {
                const double th = t0 + dt * (p + 0.5 * (gl.nodes[a] + 1.0));
                const double wt = 0.5 * dt * gl.weights[a];
                const double rs = body.polar_radius(th), rq = ray_to_box(c, th, A, Y);
                for (std::size_t b = 0; b + 1 < s_breaks.size(); ++b) {
                    const double s0 = s_breaks[b], hs = s_breaks[b + 1] - s0;
                    for (int e = 0; e < inner_order; ++e) {
                        const double s = s0 + hs * 0.5 * (gl.nodes[e] + 1.0);
                        const double rho = rs + s * (rq - rs);
                        q.points.push_back(c + Vec2{std::cos(th), std::sin(th)} * rho);
                        q.weights.push_back(wt * 0.5 * hs * gl.weights[e] * rho * (rq - rs));
                    }
                }
            }
        }
    }

    // Outer rectangles, graded away from the body and the free surface.
    auto x1_width = [&](double x) { return scale * std::max(std::min(0.5 * ell + 0.3 * (x - A), 2.0 * ell), 0.12 * x); };
    auto x2_width = [&](double y) { return scale * (0.5 * std::min(ell, margin) + 0.35 * y); };
    const auto bx = breaks_by(A, R, x1_width);
    const auto by = breaks_by(0.0, R, x2_width);
    std::vector<double> bx_left(bx.rbegin(), bx.rend());
    for (auto& v : bx_left) v = -v;
    tensor_panels(bx, by, outer_order, q.points, q.weights);
    tensor_panels(bx_left, by, outer_order, q.points, q.weights);
    const int mid = std::max(2, int(std::ceil(2.0 * A / (0.5 * std::min(ell, margin) + 0.5) / scale)));
    std::vector<double> bmid;
    for (int i = 0; i <= mid; ++i) bmid.push_back(-A + 2.0 * A * i / mid);
    const auto bdeep = breaks_by(Y, R, [&](double y) { return scale * (0.5 * std::min(ell, margin) + 0.35 * (y - Y)); });
    tensor_panels(bmid, bdeep, outer_order, q.points, q.weights);

    q.shell.resize(q.points.size());
    for (std::size_t i = 0; i < q.points.size(); ++i) {
        const double m = std::max(std::abs(q.points[i].x1), q.points[i].x2);
        q.shell[i] = m >= 2.0 * R / 3.0 ? 1 : (m >= 4.0 * R / 9.0 ? 0 : -1);
    }

    // Free surface line.
    {
        const auto& g = gauss_legendre(inner_order);
        std::vector<double> br = breaks_by(0.0, R, [&](double x) {
            return scale * (x < A ? 0.25 * ell : std::max(std::min(0.25 * ell + 0.3 * (x - A), 1.5 * ell), 0.12 * x));
        });
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            const double cx = 0.5 * (br[i] + br[i + 1]), hx = 0.5 * (br[i + 1] - br[i]);
            for (int a = 0; a < inner_order; ++a)
                for (double sgn : {1.0, -1.0}) {
                    q.surface_x.push_back(sgn * (cx + hx * g.nodes[a]));
                    q.surface_w.push_back(hx * g.weights[a]);
                }
        }
    }

    // Cutoff transition strips, split at 2 tau where the piecewise cutoff changes curvature.
    {
        std::vector<double> sx;
        for (double a : {tau, 2.0 * tau}) {
            const int n = std::max(2, int(std::ceil(tau / (0.4 * ell * scale))));
            for (int i = 0; i < n; ++i) sx.push_back(a + tau * i / n);
        }
        sx.push_back(3.0 * tau);
        const auto sy = breaks_by(0.0, 40.0 * ell, [&](double y) { return scale * (0.25 * ell + 0.3 * y); });
        std::vector<Vec2> pts;
        std::vector<double> wts;
        tensor_panels(sx, sy, inner_order, pts, wts);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (double sgn : {1.0, -1.0}) {
                q.strip_points.push_back({sgn * pts[i].x1, pts[i].x2});
                q.strip_weights.push_back(wts[i]);
            }
    }
    return q;
}

}  // namespace wavebound
