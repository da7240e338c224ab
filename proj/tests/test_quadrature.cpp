#include <gtest/gtest.h>

#include <cmath>

#include "wavebound/quadrature.hpp"
#include "wavebound/types.hpp"

using namespace wavebound;

TEST(GaussLegendre, IntegratesPolynomialsExactly)
{
    for (int n : {4, 8, 16}) {
        const auto& g = gauss_legendre(n);
        for (int p = 0; p < 2 * n; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " p=" << p;
        }
    }
}

TEST(GaussLegendre, CachedRuleIsStable)
{
    const auto& a = gauss_legendre(12);
    const auto& b = gauss_legendre(12);
    EXPECT_EQ(&a, &b);
}

TEST(KressWeights, ReproduceLogCosineMoments)
{
    // int_0^{2pi} ln(4 sin^2(s/2)) cos(k s) ds = -2 pi / |k| for k != 0, and 0 for k = 0.
    const int N = 32;
    const auto R = kress_log_weights(N);
    for (int k = 0; k < N / 2; ++k) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += R[j] * std::cos(k * 2.0 * pi * j / N);
        const double exact = k == 0 ? 0.0 : -2.0 * pi / k;
        EXPECT_NEAR(s, exact, 1e-12) << k;
    }
}

TEST(Adaptive, ResolvesEndpointSingularity)
{
    const auto r = integrate_adaptive<double>([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12, 1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, -1.0, 1e-11);
}

TEST(Adaptive, ComplexValued)
{
    const auto r = integrate_adaptive<cplx>([](double x) { return std::polar(1.0, 3.0 * x); }, 0.0, pi, 1e-13, 1e-13);
    const cplx exact = (std::polar(1.0, 3.0 * pi) - 1.0) / cplx(0.0, 3.0);
    EXPECT_LT(std::abs(r.value - exact), 1e-12);
}

TEST(GradedBreaks, CoverIntervalMonotonically)
{
    const auto b = graded_breaks(0.0, 10.0, 0.01, 0.5, 1.0);
    ASSERT_GE(b.size(), 2u);
    EXPECT_DOUBLE_EQ(b.front(), 0.0);
    EXPECT_DOUBLE_EQ(b.back(), 10.0);
    for (std::size_t i = 1; i < b.size(); ++i) EXPECT_GT(b[i], b[i - 1]);
}
