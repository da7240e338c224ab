#include <gtest/gtest.h>

#include "wavebound/boundary_data.hpp"
#include "wavebound/errors.hpp"
#include "wavebound/greens.hpp"

using namespace wavebound;

namespace {

BodyCurve unit_circle()
{
    ShapeSpec s;
    return build_body(s);
}

}  // namespace

TEST(Bumps, ProfilesAndSupport)
{
    const VolumeBump v{{2, 1.5}, 0.5, cplx(2, 1)};
    EXPECT_EQ(v.value({2, 1.5}), cplx(2, 1));
    EXPECT_EQ(v.value({2.6, 1.5}), cplx(0));
    EXPECT_NEAR(std::abs(v.value({2.25, 1.5}) - cplx(2, 1) * std::pow(0.75, 3)), 0.0, 1e-15);
    const SurfaceBump s{1.0, 0.5, 1.0};
    const double h = 1e-6;
    EXPECT_NEAR(std::abs(s.derivative(1.2) - (s.value(1.2 + h) - s.value(1.2 - h)) / (2 * h)), 0.0, 1e-8);
    EXPECT_EQ(s.value(1.6), cplx(0));
}

TEST(Bumps, DiscRuleIntegratesProfileMass)
{
    // int (1 - r^2/a^2)^3 dA = pi a^2 / 4
    const VolumeBump v{{2, 1.5}, 0.7, 1.0};
    cplx s = 0.0;
    for (const auto& p : disc_nodes(v)) s += p.w * v.value(p.x);
    EXPECT_NEAR(s.real(), pi * 0.49 / 4.0, 1e-13);
}

TEST(Profiles, NamedProfiles)
{
    EXPECT_EQ(named_profile("constant", 2.0).a0, cplx(2.0));
    EXPECT_EQ(named_profile("cos").cos.size(), 1u);
    EXPECT_EQ(named_profile("sin", cplx(0, 1)).sin.at(0), cplx(0, 1));
    EXPECT_THROW(named_profile("square"), ParameterError);
}

TEST(G1, SourceFieldNormalDerivative)
{
    const auto body = unit_circle();
    BoundaryData d;
    d.g1 = SourceField{{{{0.3, 2.1}, cplx(1, -1)}}};
    const auto g = d.g1_nodes(body, 1.0, 16);
    for (int j = 0; j < 16; ++j) {
        const auto f = body.frame(2 * pi * j / 16);
        const cplx expected = dot(green_gradient(f.point, {0.3, 2.1}, 1.0) * cplx(1, -1), f.normal);
        EXPECT_LT(std::abs(g[j] - expected), 1e-14);
    }
}

TEST(G1, FourierProfileNodes)
{
    BoundaryData d;
    d.g1 = FourierProfile{1.0, {0.5}, {0.0, 2.0}};
    const auto g = d.g1_nodes(unit_circle(), 1.0, 8);
    for (int j = 0; j < 8; ++j) {
        const double t = 2 * pi * j / 8;
        EXPECT_NEAR(std::abs(g[j] - (1.0 + 0.5 * std::cos(t) + 2.0 * std::sin(2 * t))), 0.0, 1e-14);
    }
}

TEST(Data, ZeroScaledAndExtent)
{
    BoundaryData d;
    EXPECT_TRUE(d.is_zero());
    d.f = {{{3, 2}, 0.5, 1.0}};
    d.g2 = {{-4, 1.0, 1.0}};
    EXPECT_FALSE(d.is_zero());
    EXPECT_DOUBLE_EQ(d.support_extent(), 5.0);
    const auto s = d.scaled(cplx(0, 2));
    EXPECT_EQ(s.f[0].amplitude, cplx(0, 2));
    EXPECT_EQ(s.g2[0].amplitude, cplx(0, 2));
    EXPECT_TRUE(d.scaled(0.0).is_zero());
}

TEST(Data, ValidationRejectsMisplacedSupports)
{
    const auto body = unit_circle();
    BoundaryData ok;
    ok.f = {{{3, 2}, 0.5, 1.0}};
    EXPECT_NO_THROW(validate_data(ok, body));

    BoundaryData surface = ok;
    surface.f[0].center = {3, 0.3};
    EXPECT_THROW(validate_data(surface, body), ParameterError);

    BoundaryData overlap_body = ok;
    overlap_body.f[0].center = {1.2, 2};
    EXPECT_THROW(validate_data(overlap_body, body), ParameterError);

    BoundaryData overlap = ok;
    overlap.f.push_back({{3.6, 2}, 0.5, 1.0});
    EXPECT_THROW(validate_data(overlap, body), ParameterError);

    BoundaryData g2;
    g2.g2 = {{0, 1, 1.0}, {1.5, 1, 1.0}};
    EXPECT_THROW(validate_data(g2, body), ParameterError);

    BoundaryData outside;
    outside.g1 = SourceField{{{{2.0, 2.0}, 1.0}}};
    EXPECT_THROW(validate_data(outside, body), ParameterError);
}
