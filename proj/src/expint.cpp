#include "wavebound/expint.hpp"

#include <limits>

#include "wavebound/errors.hpp"

namespace wavebound {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;
constexpr double asymptotic_radius = 35.0;
constexpr double series_band = 6.0;

double sign_imag(cplx z) { return z.imag() > 0 ? 1.0 : (z.imag() < 0 ? -1.0 : 0.0); }

}  // namespace

namespace expint_detail {

cplx series(cplx z)
{
    // Ei(z) = gamma + log z + sum z^k / (k k!)
    cplx term = 1.0;
    cplx sum = 0.0;
    for (int k = 1; k < 400; ++k) {
        term *= z / double(k);
        const cplx add = term / double(k);
        sum += add;
        if (std::norm(add) < 1e-34 * std::norm(sum)) break;
    }
    return std::exp(-z) * (euler_gamma + std::log(z) + sum);
}

cplx continued_fraction(cplx z)
{
    // e^w E1(w) with w = -z, modified Lentz on 1/(w+1- 1/(w+3- 4/(w+5- ...)))
    const cplx w = -z;
    const double tiny = 1e-300;
    cplx b = w + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 2000; ++i) {
        const double a = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::norm(del - 1.0) < 1e-32) break;
    }
    // Ei(z) = -E1(-z) + i pi sgn(Im z)
    return -h + cplx(0.0, pi * sign_imag(z)) * std::exp(-z);
}

cplx asymptotic(cplx z)
{
    const cplx inv = 1.0 / z;
    cplx term = inv;
    cplx sum = term;
    double last = std::norm(term);
    for (int k = 1; k < 200; ++k) {
        const cplx next = term * inv * double(k);
        const double mag = std::norm(next);
        if (mag > last) break;
        term = next;
        sum += term;
        last = mag;
        if (mag < 1e-34 * std::norm(sum)) break;
    }
    return sum + cplx(0.0, pi * sign_imag(z)) * std::exp(-z);
}

}  // namespace expint_detail

cplx scaled_ei(cplx z)
{
    if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() == 0.0))
        throw EvaluationError("scaled_ei: argument outside the closed right half plane");
    const double r = std::abs(z);
    if (r >= asymptotic_radius) return expint_detail::asymptotic(z);
    if (r - z.real() < series_band) return expint_detail::series(z);
    return expint_detail::continued_fraction(z);
}

}  // namespace wavebound
