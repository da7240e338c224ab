#include "wavebound/constants.hpp"

#include <cmath>

#include "wavebound/errors.hpp"

namespace wavebound {

WeightSet::WeightSet(double nu, double L, double H) : nu_(nu), L_(L), H_(H)
{
    if (!(nu > 0.0) || !(L >= 0.0) || !(H > 0.0)) throw ParameterError("weights: need nu > 0, L >= 0, H > 0");
    tau_ = L + 1.0 / nu + H;
}

WeightSet weights(double nu, const GeometryBox& box) { return WeightSet(nu, box.L, box.H); }

ConstantLedger ledger(double nu, const GeometryBox& box)
{
    if (!box.epsilon) throw ParameterError("ledger: epsilon is not set");
    if (!(nu > 0.0)) throw ParameterError("ledger: nu must be positive");
    ConstantLedger c{};
    c.nu = nu;
    c.L = box.L;
    c.h = box.h;
    c.H = box.H;
    c.kappa = box.kappa;
    c.epsilon = *box.epsilon;
    const double L = c.L, h = c.h, H = c.H, k = c.kappa, e = c.epsilon;
    c.tau = L + 1.0 / nu + H;
    const double tau = c.tau;
    const double wave = std::pow(1.0 + nu * h, 3);

    c.C3 = 3.0 + 2.0 * (k * L + 10.0);
    c.C4 = std::sqrt(2.0) + k * L;
    c.C5 = c.C4 + H * c.C3 / (2.0 * e);
    c.C6 = H / (2.0 * e) + 0.5;
    c.C7 = 72.0 * nu * L * L / h * wave;
    c.C8 = 24.0 + 18.0 * k * tau;
    c.C0 = std::ldexp(1.0, 30) * H / e * (1.0 + k * L) * (1.0 + k * tau) * (1.0 + nu * L * L / h * wave);
    c.C0_intermediate = std::ldexp(1.0, 12) * H / e * c.C8 * c.C3 * (1.0 + c.C7);
    c.C1 = 1.0 + nu * tau * c.C0 * c.C0;
    c.C2 = std::sqrt(c.C1);
    c.C = std::pow(1.0 + k * tau, 4) * std::pow(1.0 + nu * h, 6) * nu * nu * nu * std::pow(tau, 7) / (h * h * e * e);
    c.A_bound = 3.0;
    c.B_bound = 32.0 * std::sqrt(nu * tau);
    return c;
}

std::vector<LedgerEntry> ConstantLedger::entries() const
{
    return {
        {"tau", tau, "L + 1/nu + H"},
        {"C3", C3, "3 + 2 (kappa L + 10)"},
        {"C4", C4, "sqrt(2) + kappa L"},
        {"C5", C5, "C4 + H C3 / (2 eps)"},
        {"C6", C6, "H / (2 eps) + 1/2"},
        {"C7", C7, "72 nu L^2 / h (1 + nu h)^3"},
        {"C8", C8, "24 + 18 kappa tau"},
        {"C0", C0, "2^30 H/eps (1 + kappa L)(1 + kappa tau)(1 + nu L^2/h (1 + nu h)^3)"},
        {"C0_intermediate", C0_intermediate, "2^12 H/eps C8 C3 (1 + C7)"},
        {"C1", C1, "1 + nu tau C0^2"},
        {"C2", C2, "sqrt(C1)"},
        {"C", C, "h^-2 eps^-2 (1 + kappa tau)^4 (1 + nu h)^6 nu^3 tau^7"},
        {"A_bound", A_bound, "3"},
        {"B_bound", B_bound, "32 sqrt(nu tau)"},
    };
}

TheoremBounds theorem_rhs(double C, double normF)
{
    if (!(normF >= 0.0)) throw ParameterError("theorem_rhs: normF must be nonnegative");
    return {(1.0 + C) * normF, std::sqrt(1.0 + C) * normF, "modulo absolute constant c (taken as 1)"};
}

TheoremBounds theorem_rhs(const ConstantLedger& l, double normF) { return theorem_rhs(l.C, normF); }

}  // namespace wavebound
