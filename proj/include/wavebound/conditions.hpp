#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavebound/geometry.hpp"

namespace wavebound {

// Minimum of a slack field over the body. slack >= 0 everywhere means the condition holds.
struct ConditionReport {
    std::string name;
    double min_slack = 0.0;
    Vec2 argmin;
    double argmin_t = 0.0;
    int samples = 0;
    double tolerance = 0.0;
    bool holds = false;
    // |min slack at `samples` - min slack at samples/2|
    double convergence = 0.0;
    std::vector<std::string> warnings;
};

// Pointwise slacks. The frame normal points into the body.
double condition1_slack(const FramePoint& f);
double condition2_slack(const FramePoint& f, double epsilon);
double mazya_slack(const FramePoint& f);
// W.n with W = (x1 (x1^2 - x2^2), 2 x1^2 x2) / |x|^2.
double w_dot_n(const FramePoint& f);
double lemma4_slack(const FramePoint& f, double H, double epsilon);

// 1e-9 * L * H^2 for the given body.
double default_tolerance(const BodyCurve& body);

struct CheckOptions {
    std::optional<int> samples;
    std::optional<double> tolerance;
};

ConditionReport check_condition1(const BodyCurve& body, CheckOptions opt = {});
// Throws ParameterError unless 0 < epsilon <= h.
ConditionReport check_condition2(const BodyCurve& body, double epsilon, CheckOptions opt = {});
ConditionReport check_mazya(const BodyCurve& body, CheckOptions opt = {});
// Records a warning when Conditions 1 and 2 are not both satisfied, but still evaluates.
ConditionReport check_lemma4(const BodyCurve& body, double epsilon, CheckOptions opt = {});

struct EpsilonSearch {
    std::optional<double> epsilon;
    // Closed sub-intervals of (0, h] found feasible by the scan, after refinement of their ends.
    std::vector<std::pair<double, double>> feasible;
};

EpsilonSearch max_epsilon(const BodyCurve& body, CheckOptions opt = {}, double rel_tol = 1e-10);

struct UniquenessReport {
    double value = 0.0;
    bool holds = false;
};

// 24 nu L^2 (1 + nu h)^3 / h < 1
UniquenessReport uniqueness_criterion(double nu, double L, double h);

}  // namespace wavebound
