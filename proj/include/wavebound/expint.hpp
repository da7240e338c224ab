#pragma once

#include "wavebound/types.hpp"

namespace wavebound {

// exp(-z) Ei(z) for Re z >= 0, z != 0, principal branch of the logarithm.
// Relative accuracy is close to machine precision over the whole half plane.
cplx scaled_ei(cplx z);

// Individual evaluation paths, exposed for testing.
namespace expint_detail {
cplx series(cplx z);
cplx continued_fraction(cplx z);
cplx asymptotic(cplx z);
}  // namespace expint_detail

}  // namespace wavebound
