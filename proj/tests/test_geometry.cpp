#include <gtest/gtest.h>

#include <cmath>

#include "wavebound/errors.hpp"
#include "wavebound/geometry.hpp"

using namespace wavebound;

namespace {

ShapeSpec circle(Vec2 c, double r)
{
    ShapeSpec s;
    s.center = c;
    s.radius = r;
    return s;
}

ShapeSpec ellipse(Vec2 c, double a, double b)
{
    ShapeSpec s;
    s.kind = ShapeKind::ellipse;
    s.center = c;
    s.semi_a = a;
    s.semi_b = b;
    return s;
}

ShapeSpec fourier(Vec2 c, double r, std::vector<std::pair<double, double>> coeffs)
{
    ShapeSpec s;
    s.kind = ShapeKind::fourier;
    s.center = c;
    s.radius = r;
    s.coeffs = std::move(coeffs);
    return s;
}

}  // namespace

TEST(Frame, CircleNormalPointsToCenter)
{
    const auto body = build_body(circle({0, 2}, 1));
    const auto right = body.frame(0.0);
    EXPECT_NEAR(right.point.x1, 1.0, 1e-15);
    EXPECT_NEAR(right.normal.x1, -1.0, 1e-15);
    EXPECT_NEAR(right.normal.x2, 0.0, 1e-15);
    // t = 3pi/2 is the point (0, 1), nearest the free surface.
    const auto top = body.frame(1.5 * pi);
    EXPECT_NEAR(top.point.x2, 1.0, 1e-15);
    EXPECT_NEAR(top.normal.x1, 0.0, 1e-15);
    EXPECT_NEAR(top.normal.x2, 1.0, 1e-15);
    EXPECT_NEAR(top.curvature, 1.0, 1e-14);
}

TEST(Frame, EllipseVertexCurvature)
{
    const auto body = build_body(ellipse({0, 3}, 2, 1));
    const auto f = body.frame(0.0);
    EXPECT_NEAR(f.point.x1, 2.0, 1e-15);
    EXPECT_NEAR(f.normal.x1, -1.0, 1e-15);
    EXPECT_NEAR(f.curvature, 2.0, 1e-14);
}

TEST(Frame, NormalPointsIntoConvexBodies)
{
    for (const auto& spec : {circle({0, 2}, 1), ellipse({0.3, 3}, 2, 1), fourier({0, 2}, 0.8, {{0, 0.08}, {0.05, 0}})}) {
        const auto body = build_body(spec);
        for (int i = 0; i < 200; ++i) {
            const auto f = body.frame(2.0 * pi * i / 200);
            EXPECT_LT(dot(f.normal, f.point - spec.center), 0.0);
        }
    }
}

TEST(Frame, DerivativesMatchFiniteDifferences)
{
    const auto body = build_body(fourier({0.2, 2}, 0.8, {{0.05, -0.03}, {0.04, 0.02}, {0, 0.01}}));
    const double h = 1e-5;
    for (double t : {0.1, 1.3, 2.9, 4.4, 6.0}) {
        const Vec2 fd1 = (body.point(t + h) - body.point(t - h)) * (0.5 / h);
        const Vec2 fd2 = (body.d1(t + h) - body.d1(t - h)) * (0.5 / h);
        EXPECT_LT(norm(fd1 - body.d1(t)), 1e-9);
        EXPECT_LT(norm(fd2 - body.d2(t)), 1e-9);
    }
}

TEST(Frame, ClosesAtFullTurn)
{
    const auto body = build_body(fourier({0, 2}, 0.8, {{0.1, 0.02}, {0.03, 0}}));
    const auto a = body.frame(0.0), b = body.frame(2.0 * pi);
    EXPECT_LT(norm(a.point - b.point), 1e-12);
    EXPECT_LT(norm(a.normal - b.normal), 1e-12);
    EXPECT_NEAR(a.curvature, b.curvature, 1e-12);
}

TEST(Frame, CircleArclength)
{
    const auto body = build_body(circle({0, 4}, 1.7));
    double s = 0.0;
    const int n = 64;
    for (int i = 0; i < n; ++i) s += body.frame(2.0 * pi * i / n).speed * 2.0 * pi / n;
    EXPECT_NEAR(s, 2.0 * pi * 1.7, 1e-10);
}

TEST(Box, CircleExtremes)
{
    const auto box = geometry_box(build_body(circle({0, 2}, 1)));
    EXPECT_NEAR(box.L, 1.0, 1e-12);
    EXPECT_NEAR(box.h, 1.0, 1e-12);
    EXPECT_NEAR(box.H, 3.0, 1e-12);
    EXPECT_NEAR(box.kappa, 1.0, 1e-12);
    ASSERT_TRUE(box.epsilon);
    EXPECT_NEAR(*box.epsilon, 1.0, 1e-9);
}

TEST(Box, EllipseExtremes)
{
    const auto box = geometry_box(build_body(ellipse({0, 3}, 2, 1)), 0.5);
    EXPECT_NEAR(box.L, 2.0, 1e-12);
    EXPECT_NEAR(box.h, 2.0, 1e-12);
    EXPECT_NEAR(box.H, 4.0, 1e-12);
    EXPECT_NEAR(box.kappa, 2.0, 1e-10);
    EXPECT_DOUBLE_EQ(*box.epsilon, 0.5);
}

TEST(Box, RefinementIsMonotone)
{
    auto coarse = fourier({0.1, 2.2}, 0.9, {{0.07, -0.05}, {0.03, 0.04}, {0.0, 0.02}});
    auto fine = coarse;
    coarse.samples = 256;
    fine.samples = 8192;
    const auto a = geometry_box(build_body(coarse), 0.5), b = geometry_box(build_body(fine), 0.5);
    const double tol = 1e-12;
    EXPECT_LE(b.h, a.h + tol);
    EXPECT_GE(b.L, a.L - tol);
    EXPECT_GE(b.H, a.H - tol);
    EXPECT_GE(b.kappa, a.kappa - 1e-9);
}

TEST(Box, ExplicitEpsilonMustLieInRange)
{
    const auto body = build_body(circle({0, 2}, 1));
    EXPECT_THROW(geometry_box(body, 1.5), ParameterError);
    EXPECT_THROW(geometry_box(body, 0.0), ParameterError);
}

TEST(Build, RejectsInvalidShapes)
{
    EXPECT_THROW(build_body(circle({0, 0.5}, 1)), GeometryError);
    EXPECT_THROW(build_body(circle({0, 2}, -1)), ParameterError);
    EXPECT_THROW(build_body(ellipse({0, 2}, 0, 1)), ParameterError);
    EXPECT_THROW(build_body(fourier({0, 2}, 0.5, {{1.2, 0}})), GeometryError);
}

TEST(Queries, ContainsAndDistance)
{
    const auto body = build_body(circle({0, 2}, 1));
    EXPECT_TRUE(body.contains({0.2, 2.3}));
    EXPECT_FALSE(body.contains({1.2, 2.0}));
    EXPECT_NEAR(body.distance({3, 2}), 2.0, 1e-10);
    EXPECT_NEAR(body.distance({0, 0}), 1.0, 1e-10);
    EXPECT_NEAR(body.min_depth(), 1.0, 1e-12);
}
