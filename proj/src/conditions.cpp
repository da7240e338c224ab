#include "wavebound/conditions.hpp"

#include <cmath>
#include <functional>

#include "wavebound/errors.hpp"

namespace wavebound {

double condition1_slack(const FramePoint& f) { return -f.point.x1 * f.normal.x1; }

double condition2_slack(const FramePoint& f, double epsilon)
{
    const double x1 = f.point.x1, y = f.point.x2 - epsilon;
    return x1 * (x1 * x1 - y * y) * f.normal.x1 + 2.0 * x1 * x1 * y * f.normal.x2;
}

double mazya_slack(const FramePoint& f) { return condition2_slack(f, 0.0); }

double w_dot_n(const FramePoint& f) { return mazya_slack(f) / dot(f.point, f.point); }

double lemma4_slack(const FramePoint& f, double H, double epsilon)
{
    return H / epsilon * w_dot_n(f) + f.point.x1 * f.normal.x1;
}

double default_tolerance(const BodyCurve& body)
{
    const int n = body.samples();
    const double L = maximize_periodic([&](double t) { return std::abs(body.point(t).x1); }, n).value;
    const double H = maximize_periodic([&](double t) { return body.point(t).x2; }, n).value;
    return 1e-9 * std::max(L, 1e-300) * H * H;
}

namespace {

struct MinSlack {
    double value;
    double t;
};

MinSlack min_slack(const BodyCurve& body, const std::function<double(const FramePoint&)>& slack, int samples)
{
    const auto e = maximize_periodic([&](double t) { return -slack(body.frame(t)); }, samples);
    return {-e.value, e.t};
}

ConditionReport evaluate(std::string name, const BodyCurve& body,
                         const std::function<double(const FramePoint&)>& slack, const CheckOptions& opt)
{
    ConditionReport r;
    r.name = std::move(name);
    r.samples = opt.samples.value_or(body.samples());
    if (r.samples < 16) throw ParameterError("condition check: samples must be at least 16");
    r.tolerance = opt.tolerance.value_or(default_tolerance(body));
    const MinSlack full = min_slack(body, slack, r.samples);
    const MinSlack half = min_slack(body, slack, r.samples / 2);
    r.min_slack = full.value;
    r.argmin_t = full.t;
    r.argmin = body.point(full.t);
    r.convergence = std::abs(full.value - half.value) + 1e-14 * r.tolerance;
    r.holds = r.min_slack >= -r.tolerance;
    return r;
}

void require_epsilon(const BodyCurve& body, double epsilon)
{
    if (!(epsilon > 0.0) || epsilon > body.min_depth() * (1.0 + 1e-12))
        throw ParameterError("epsilon must lie in (0, h], h = " + std::to_string(body.min_depth()));
}

}  // namespace

ConditionReport check_condition1(const BodyCurve& body, CheckOptions opt)
{
    return evaluate("condition1", body, condition1_slack, opt);
}

ConditionReport check_condition2(const BodyCurve& body, double epsilon, CheckOptions opt)
{
    require_epsilon(body, epsilon);
    return evaluate("condition2", body, [epsilon](const FramePoint& f) { return condition2_slack(f, epsilon); }, opt);
}

ConditionReport check_mazya(const BodyCurve& body, CheckOptions opt)
{
    return evaluate("mazya", body, mazya_slack, opt);
}

ConditionReport check_lemma4(const BodyCurve& body, double epsilon, CheckOptions opt)
{
    require_epsilon(body, epsilon);
    const int n = opt.samples.value_or(body.samples());
    const double H = maximize_periodic([&](double t) { return body.point(t).x2; }, n).value;
    auto r = evaluate("lemma4", body, [H, epsilon](const FramePoint& f) { return lemma4_slack(f, H, epsilon); }, opt);
    if (!check_condition1(body, opt).holds) r.warnings.push_back("condition1 does not hold; bound not guaranteed");
    if (!check_condition2(body, epsilon, opt).holds) r.warnings.push_back("condition2 does not hold; bound not guaranteed");
    return r;
}

EpsilonSearch max_epsilon(const BodyCurve& body, CheckOptions opt, double rel_tol)
{
    constexpr int scan = 32;
    const double h = body.min_depth();
    if (!opt.tolerance) opt.tolerance = default_tolerance(body);
    auto feasible = [&](double e) { return check_condition2(body, std::min(e, h), opt).holds; };
    auto refine = [&](double good, double bad) {
        while (std::abs(bad - good) > rel_tol * std::abs(good)) {
            const double mid = 0.5 * (good + bad);
            (feasible(mid) ? good : bad) = mid;
        }
        return good;
    };

    std::vector<bool> ok(scan + 1, false);
    for (int k = 1; k <= scan; ++k) ok[k] = feasible(h * k / scan);

    EpsilonSearch out;
    for (int k = 1; k <= scan; ++k) {
        if (!ok[k] || ok[k - 1]) continue;
        int j = k;
        while (j < scan && ok[j + 1]) ++j;
        // lower end: refine towards the infeasible neighbour (or keep the first scan point)
        const double lo = k == 1 ? h / scan : refine(h * k / scan, h * (k - 1) / scan);
        const double hi = j == scan ? h : refine(h * j / scan, h * (j + 1) / scan);
        out.feasible.emplace_back(lo, hi);
        k = j;
    }
    if (!out.feasible.empty()) out.epsilon = out.feasible.back().second;
    return out;
}

UniquenessReport uniqueness_criterion(double nu, double L, double h)
{
    if (!(nu > 0.0) || !(L > 0.0) || !(h > 0.0))
        throw ParameterError("uniqueness_criterion: nu, L and h must be positive");
    const double v = 24.0 * nu * L * L * std::pow(1.0 + nu * h, 3) / h;
    return {v, v < 1.0};
}

}  // namespace wavebound
