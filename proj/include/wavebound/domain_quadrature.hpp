#pragma once

#include <vector>

#include "wavebound/geometry.hpp"

namespace wavebound {

// Node sets for integrals over the truncated fluid region {|x1| < R, 0 < x2 < R} minus the body,
// over the free surface segment |x1| < R, and over the cutoff transition strips tau < |x1| < 3 tau.
struct DomainQuadrature {
    double R = 0.0;
    double box_half_width = 0.0;  // body-fitted inner box [-A, A] x [0, Y]
    double box_depth = 0.0;
    int level = 0;

    std::vector<Vec2> points;
    std::vector<double> weights;
    // -1 inside, 0 for max(|x1|, x2) in [4R/9, 2R/3), 1 for [2R/3, R]
    std::vector<int> shell;

    std::vector<double> surface_x;
    std::vector<double> surface_w;

    std::vector<Vec2> strip_points;
    std::vector<double> strip_weights;

    std::size_t size() const { return points.size(); }
};

double default_truncation(double nu, const GeometryBox& box);

// Level 0 is the base resolution; each level halves all panel widths.
DomainQuadrature build_domain_quadrature(const BodyCurve& body, const GeometryBox& box, double nu, double R,
                                         int level = 0);

}  // namespace wavebound
