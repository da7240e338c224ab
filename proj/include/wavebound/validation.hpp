#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavebound/constants.hpp"
#include "wavebound/domain_quadrature.hpp"
#include "wavebound/solver.hpp"

namespace wavebound {

// Transition profile chi: 0 for t <= 1, 1 for t >= 3.
// piecewise_quadratic: chi'' = +1 on (1, 2), -1 on (2, 3), so |chi'| <= 1 and |chi''| <= 1.
// quintic: 6s^5 - 15s^4 + 10s^3 with s = (t-1)/2, C2 but max |chi''| = 5 sqrt(3)/6.
enum class CutoffKind { piecewise_quadratic, quintic };

struct Cutoff {
    CutoffKind kind = CutoffKind::piecewise_quadratic;
    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;
};

// U+ = chi(x1 g) e^{-i nu x1 - nu x2},  U- = chi(-x1 g) e^{i nu x1 - nu x2},  g = gamma1^2.
struct WaveMode {
    double nu;
    double gamma1_sq;
    Cutoff cutoff;

    FieldSample plus(Vec2 x) const;
    FieldSample minus(Vec2 x) const;
    cplx laplacian_plus(Vec2 x) const;
    cplx laplacian_minus(Vec2 x) const;
};

struct WaveModeBounds {
    double A = 0.0;  // (|||U+|||_u^2 + |||U-|||_u^2)^{1/2}
    double B = 0.0;  // (||U+ Laplacian / gamma0||^2 + ||U- Laplacian / gamma0||^2)^{1/2}
    double A_bound = 3.0;
    double B_bound = 0.0;
    bool A_ok = false;
    bool B_ok = false;
};

WaveModeBounds wave_mode_bounds(double nu, double L, double H, Cutoff cutoff = {});

struct AuditOptions {
    double R = 0.0;  // 0: default_truncation
    int level = 0;
    Cutoff cutoff;
    Execution execution = Execution::parallel;
};

struct NormReport {
    double norm_u = 0.0;    // |||u|||_u
    double norm_F = 0.0;    // |||F|||_f
    double norm_F1 = 0.0;   // |||F1|||_f with f1 = f + Laplacian(d+ U+ + d- U-)
    double norm_v = 0.0;    // |||v|||
    double norm_v_u = 0.0;  // |||v|||_u
    double vx1_sq = 0.0;    // ||d v / d x1||^2
    double s_wn = 0.0;      // int_S |dv/dsigma|^2 (W.n)
    double R = 0.0;
    double tail_estimate = 0.0;
    int level = 0;
    std::size_t nodes = 0;
};

struct IdentityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

struct IdentityResiduals {
    IdentityCheck green;
    IdentityCheck energy;
    IdentityCheck intid_w;
    IdentityCheck intid_v;
    std::vector<IdentityCheck> all() const { return {green, energy, intid_w, intid_v}; }
};

struct FieldAudit {
    ScatteringResult scattering;
    NormReport norms;
    IdentityResiduals residuals;
};

// One pass over the quadrature nodes producing norms and identity residuals together.
FieldAudit audit_field(const SolutionField& sol, const ScatteringResult& sc, AuditOptions opt = {});

NormReport compute_norms(const SolutionField& sol, const ScatteringResult& sc, AuditOptions opt = {});
IdentityResiduals identity_residuals(const SolutionField& sol, const ScatteringResult& sc, AuditOptions opt = {});

enum class ZField { W, V };

// Q = (div Z - 2T) I - (grad Z + grad Z^T) with T = 1/2.
struct Mat2 {
    double a11, a12, a22;
};
Mat2 q_matrix(ZField z, Vec2 x);
Vec2 z_field(ZField z, Vec2 x);
double z_d1_z1(ZField z, Vec2 x);

struct QFormResult {
    double max_normalized = 0.0;  // max (Q xi).xi / |xi|^2
    double min_normalized = 0.0;
    std::size_t samples = 0;
    double fd_mismatch = 0.0;  // max |Q - finite-difference Q| over the first samples
};

QFormResult q_form_check(ZField z, std::size_t samples, std::uint64_t seed);

struct BoundReport {
    std::string label;
    double norm_u = 0.0, norm_F = 0.0, d_sum = 0.0, C = 0.0;
    double rho_u = 0.0, rho_d = 0.0;
    // Inequality left and right sides.
    double lemma1_lhs = 0.0, lemma1_rhs = 0.0;
    double lemma2_lhs = 0.0, lemma2_rhs = 0.0;
    double theorem4_lhs = 0.0, theorem4_rhs = 0.0;
    double n5_lhs = 0.0, n5_rhs = 0.0;
    bool lemma1 = true, lemma2 = true, theorem4 = true, n5 = true;
};

// Throws InconsistencyError for |||F||| = 0 with a nonzero solution.
BoundReport bound_report(const std::string& label, const FieldAudit& audit, const ConstantLedger& ledger);

}  // namespace wavebound
