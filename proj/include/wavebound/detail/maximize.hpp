#pragma once

#include <boost/math/tools/minima.hpp>

namespace wavebound {

template <class F>
Extremum maximize_periodic(F&& f, int samples)
{
    const double dt = 2.0 * pi / samples;
    Extremum best{0.0, f(0.0)};
    for (int j = 1; j < samples; ++j) {
        const double t = j * dt;
        const double v = f(t);
        if (v > best.value) best = {t, v};
    }
    auto neg = [&f](double t) { return -f(t); };
    const auto [t, v] = boost::math::tools::brent_find_minima(neg, best.t - dt, best.t + dt, 52);
    if (-v > best.value) best = {t, -v};
    return best;
}

}  // namespace wavebound
