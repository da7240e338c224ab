#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wavebound/boundary_data.hpp"
#include "wavebound/geometry.hpp"
#include "wavebound/greens.hpp"
#include "wavebound/parallel.hpp"

namespace wavebound {

struct SolveOptions {
    Execution execution = Execution::parallel;
    double max_condition = 1e12;
};

// Field u = u_p + single layer over S. Immutable after construction.
class SolutionField {
public:
    const BodyCurve& body() const { return body_; }
    const BoundaryData& data() const { return data_; }
    double nu() const { return nu_; }
    int panels() const { return int(nodes_.size()); }
    double weight() const { return 2.0 * pi / panels(); }

    const std::vector<FramePoint>& nodes() const { return nodes_; }
    const std::vector<cplx>& density() const { return density_; }
    // u and its tangential derivative at the nodes.
    const std::vector<cplx>& trace() const { return trace_; }
    const std::vector<cplx>& trace_tangential() const { return trace_tangential_; }
    // g1 and its tangential derivative at the nodes.
    const std::vector<cplx>& g1() const { return g1_; }
    const std::vector<cplx>& g1_tangential() const { return g1_tangential_; }

    double condition() const { return condition_; }
    double max_panel() const { return max_panel_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    // Trigonometric interpolant of the density.
    cplx density_at(double t) const;

    // Density times arclength weight on an upsampled grid, for near-boundary evaluation.
    struct FineGrid {
        int factor = 1;
        double max_panel = 0.0;
        std::vector<Vec2> points;
        std::vector<cplx> weighted_density;
    };
    const std::vector<FineGrid>& fine_grids() const { return fine_; }

private:
    friend SolutionField assemble_and_solve(const BodyCurve&, double, const BoundaryData&, int, SolveOptions);
    SolutionField(BodyCurve body, BoundaryData data, double nu) : body_(std::move(body)), data_(std::move(data)), nu_(nu) {}

    BodyCurve body_;
    BoundaryData data_;
    double nu_;
    std::vector<FramePoint> nodes_;
    std::vector<cplx> density_, coeffs_;
    std::vector<cplx> trace_, trace_tangential_, g1_, g1_tangential_;
    double condition_ = 0.0;
    double max_panel_ = 0.0;
    std::vector<std::string> warnings_;
    std::vector<FineGrid> fine_;
};

// Second-kind system matrix  -I/2 + K'  on N equispaced parameter nodes.
Eigen::MatrixXcd assemble_matrix(const BodyCurve& body, double nu, int N, Execution exec);

SolutionField assemble_and_solve(const BodyCurve& body, double nu, const BoundaryData& data, int N,
                                 SolveOptions opt = {});

// Field of f and g2 alone. The gradient is skipped (left zero) when with_gradient is false.
FieldSample particular_field(const BoundaryData& data, double nu, Vec2 x, bool with_gradient = true);

FieldSample evaluate_field(const SolutionField& sol, Vec2 x, bool with_gradient = true);
inline cplx evaluate(const SolutionField& sol, Vec2 x) { return evaluate_field(sol, x, false).value; }
inline CVec2 evaluate_gradient(const SolutionField& sol, Vec2 x) { return evaluate_field(sol, x).gradient; }
std::vector<FieldSample> evaluate_many(const SolutionField& sol, std::span<const Vec2> points,
                                       Execution exec = Execution::parallel, bool with_gradient = true);

struct ScatteringResult {
    cplx d_plus, d_minus;              // Kochin integrals (reported values)
    cplx far_plus, far_minus;          // least-squares fit of the far field
    std::string primary_method = "kochin";
    std::string check_method = "far-field-fit";
    double discrepancy = 0.0;          // relative
    double far_distance = 0.0;
};

struct ScatterOptions {
    double tolerance = 1e-3;
    double far_distance = 0.0;  // 0: automatic
};

// Throws ExtractionError when the two methods differ by more than the tolerance.
ScatteringResult scattering_coefficients(const SolutionField& sol, ScatterOptions opt = {});

// d/dt of the trigonometric interpolant through equispaced samples.
std::vector<cplx> spectral_derivative(const std::vector<cplx>& values);

}  // namespace wavebound
