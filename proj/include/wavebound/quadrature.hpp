#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Core>

namespace wavebound {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rules are computed once per order and cached.
const GaussRule& gauss_legendre(int order);

// Weights R_m (lag m = i - j mod N) for the periodic product rule
//   int_0^{2pi} ln(4 sin^2((t - s)/2)) phi(s) ds ~ sum_j R_{i-j} phi(t_j),
// N even.
std::vector<double> kress_log_weights(int n_points);

// Breakpoints a = b_0 < b_1 < ... < b_m = b with widths starting at `first`
// and growing by `growth` times the distance from a, capped at `cap`.
std::vector<double> graded_breaks(double a, double b, double first, double growth, double cap);

namespace quad_detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) { return v.norm(); }

extern const double gk_nodes[8];
extern const double gk_weights[8];
extern const double g_weights[4];
}  // namespace quad_detail

template <class V>
struct AdaptiveResult {
    V value;
    double error = 0.0;
    int evaluations = 0;
    bool converged = true;
};

// Adaptive 7/15-point Gauss-Kronrod over [a, b], starting from `initial` equal pieces.
// The value type only needs +, scaling by double and a magnitude.
template <class V, class F>
AdaptiveResult<V> integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                                     int initial = 1, int max_intervals = 4000)
{
    struct Piece {
        double a, b;
        V value;
        double error;
    };
    auto rule = [&f](double lo, double hi, int& evals) {
        const double c = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        V fc = f(c);
        V kron = fc * quad_detail::gk_weights[7];
        V gauss = fc * quad_detail::g_weights[3];
        for (int i = 0; i < 7; ++i) {
            const double x = h * quad_detail::gk_nodes[i];
            V s = f(c - x) + f(c + x);
            kron = kron + s * quad_detail::gk_weights[i];
            if (i % 2 == 1) gauss = gauss + s * quad_detail::g_weights[i / 2];
        }
        evals += 15;
        kron = kron * h;
        gauss = gauss * h;
        return Piece{lo, hi, kron, quad_detail::magnitude(V(kron - gauss))};
    };

    AdaptiveResult<V> out;
    std::vector<Piece> pieces;
    const double w = (b - a) / initial;
    for (int i = 0; i < initial; ++i)
        pieces.push_back(rule(a + i * w, (i + 1 == initial) ? b : a + (i + 1) * w, out.evaluations));

    while (true) {
        V total = pieces[0].value;
        double err = pieces[0].error;
        std::size_t worst = 0;
        for (std::size_t i = 1; i < pieces.size(); ++i) {
            total = total + pieces[i].value;
            err += pieces[i].error;
            if (pieces[i].error > pieces[worst].error) worst = i;
        }
        const double target = std::max(abs_tol, rel_tol * quad_detail::magnitude(total));
        if (err <= target || int(pieces.size()) >= max_intervals) {
            out.value = total;
            out.error = err;
            out.converged = err <= target;
            return out;
        }
        const Piece p = pieces[worst];
        const double mid = 0.5 * (p.a + p.b);
        pieces[worst] = rule(p.a, mid, out.evaluations);
        pieces.push_back(rule(mid, p.b, out.evaluations));
    }
}

}  // namespace wavebound
