#include "wavebound/quadrature.hpp"

#include <map>
#include <utility>
#include <mutex>

#include "wavebound/errors.hpp"
#include "wavebound/types.hpp"

namespace wavebound {

namespace quad_detail {
// Kronrod abscissae on (0, 1], largest first, last entry is the centre.
const double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
const double gk_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes gk_nodes[1], [3], [5] and the centre.
const double g_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace quad_detail

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x)
{
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if (n == 0) return {1.0, 0.0};
    return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

GaussRule build_rule(int n)
{
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(n, x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order)
{
    if (order < 1 || order > 512) throw ParameterError("gauss_legendre: order out of range");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
    return it->second;
}

std::vector<double> kress_log_weights(int n_points)
{
    if (n_points < 2 || n_points % 2 != 0) throw ParameterError("kress_log_weights: need an even point count");
    const int n = n_points / 2;
    std::vector<double> r(n_points);
    for (int m = 0; m < n_points; ++m) {
        const double d = 2.0 * pi * m / n_points;
        double s = 0.0;
        for (int k = 1; k < n; ++k) s += std::cos(k * d) / k;
        r[m] = -2.0 * pi / n * s - pi / (double(n) * n) * std::cos(n * d);
    }
    return r;
}

std::vector<double> graded_breaks(double a, double b, double first, double growth, double cap)
{
    if (!(b > a) || !(first > 0.0)) throw ParameterError("graded_breaks: empty interval or width");
    std::vector<double> br{a};
    double x = a;
    while (x < b) {
        double w = std::min(cap, std::max(first, growth * (x - a)));
        if (x + 1.5 * w >= b) w = b - x;
        x += w;
        br.push_back(x);
    }
    br.back() = b;
    return br;
}

}  // namespace wavebound
