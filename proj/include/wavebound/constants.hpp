#pragma once

#include <string>
#include <vector>

#include "wavebound/geometry.hpp"

namespace wavebound {

class WeightSet {
public:
    WeightSet(double nu, double L, double H);

    double nu() const { return nu_; }
    double tau() const { return tau_; }
    double gamma0_sq(Vec2 x) const
    {
        return nu_ * nu_ / (L_ * L_ * nu_ * nu_ + 1.0 + nu_ * nu_ * dot(x, x));
    }
    double gamma1_sq() const { return 1.0 / tau_; }
    double gamma2_sq(double x1) const { return nu_ / (1.0 + nu_ * nu_ * x1 * x1); }

private:
    double nu_, L_, H_, tau_;
};

WeightSet weights(double nu, const GeometryBox& box);

struct LedgerEntry {
    std::string name;
    double value;
    std::string formula;
};

// Upper-bound forms of all constants feeding the final estimate; c is taken as 1.
struct ConstantLedger {
    double nu, L, h, H, kappa, epsilon;
    double tau;
    double C3, C4, C5, C6, C7, C8;
    double C0;
    double C0_intermediate;  // 2^12 H eps^-1 C8 C3 (1 + C7), kept for comparison with C0
    double C1, C2;
    double C;
    double A_bound;
    double B_bound;

    std::vector<LedgerEntry> entries() const;
};

ConstantLedger ledger(double nu, const GeometryBox& box);

struct TheoremBounds {
    double bound_u;
    double bound_d;
    std::string caveat;
};

TheoremBounds theorem_rhs(const ConstantLedger& ledger, double normF);
TheoremBounds theorem_rhs(double C, double normF);

}  // namespace wavebound
