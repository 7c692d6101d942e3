#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "pho/states.hpp"
#include "pho/verify.hpp"

using namespace pho;
using cd = std::complex<double>;

namespace {

const double kS[] = {0.5, 1.0, 2.0};

StateTruncation sized(StateFamily f, const ModelParams& p, double r, double threshold = 1e-12) {
    StateTruncation t;
    t.tail_threshold = threshold;
    t.dim = required_dimension(f, p, r, threshold);
    return t;
}

double distance(const FockVector& a, const FockVector& b) {
    double acc = 0.0;
    for (std::size_t n = 0; n < std::max(a.dim(), b.dim()); ++n) {
        const cd x = n < a.dim() ? a.coeffs[n] : 0.0;
        const cd y = n < b.dim() ? b.coeffs[n] : 0.0;
        acc += std::norm(x - y);
    }
    return std::sqrt(acc);
}

} // namespace

TEST(Normalization, FrozenValues) {
    EXPECT_NEAR(bg_normalization(ModelParams::from_s(0.0), 1.0), 0.74259082242077731, 1e-14);
    EXPECT_NEAR(bg_normalization(ModelParams::from_s(0.0), 1.0), 1.0 / std::sqrt(std::sinh(2.0) / 2.0), 1e-15);
    EXPECT_NEAR(gp_normalization(ModelParams::from_s(1.0), 0.5), 0.69795364432657475, 1e-14);
    EXPECT_NEAR(gp_normalization(ModelParams::from_s(1.0), 0.5), std::pow(0.75, 1.25), 1e-15);
    EXPECT_EQ(gp_normalization(ModelParams::from_s(1.0), 0.0), 1.0);
    EXPECT_THROW(gp_normalization(ModelParams::from_s(1.0), 1.0), DomainError);
}

TEST(States, VacuumAtOrigin) {
    const auto p = ModelParams::from_s(1.0);
    for (const auto& v : {bg_state(p, 0.0), gp_state(p, 0.0)}) {
        EXPECT_EQ(v.coeffs[0], cd(1.0));
        for (std::size_t n = 1; n < v.dim(); ++n) EXPECT_EQ(v.coeffs[n], cd(0.0));
    }
}

TEST(States, CoefficientRatios) {
    const auto p = ModelParams::from_s(1.0);
    const auto bg = bg_state(p, 1.0);
    EXPECT_NEAR((bg.coeffs[1] / bg.coeffs[0]).real(), 0.63245553203367588, 1e-15);
    EXPECT_NEAR((bg.coeffs[1] / bg.coeffs[0]).real(), 1.0 / m_minus(p, 1), 1e-15);
    const auto gp = gp_state(p, 0.4);
    EXPECT_NEAR((gp.coeffs[1] / gp.coeffs[0]).real(), std::sqrt(2.5) * 0.4, 1e-15);
}

TEST(States, UnitNormWithinTailBound) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        for (double r : {0.1, 1.0, 2.5, 3.0}) {
            const auto v = bg_state(p, std::polar(r, 0.7), sized(StateFamily::barut_girardello, p, r));
            EXPECT_NEAR(v.norm_squared(), 1.0, 1e-10);
            EXPECT_LE(v.tail_bound, 1e-12);
        }
        for (double r : {0.1, 0.5, 0.9, 0.97}) {
            const auto v = gp_state(p, std::polar(r, -1.1), sized(StateFamily::gilmore_perelomov, p, r));
            EXPECT_NEAR(v.norm_squared(), 1.0, 1e-10);
            EXPECT_LE(v.tail_bound, 1e-12);
        }
    }
}

TEST(States, TailBoundIsAnUpperBound) {
    const auto p = ModelParams::from_s(1.0);
    const auto big = gp_state(p, 0.8, sized(StateFamily::gilmore_perelomov, p, 0.8, 1e-30));
    for (std::size_t D : {20, 40, 80}) {
        double tail = 0.0;
        for (std::size_t n = D; n < big.dim(); ++n) tail += std::norm(big.coeffs[n]);
        EXPECT_GE(tail_mass_bound(StateFamily::gilmore_perelomov, p, 0.8, D), tail);
        EXPECT_LE(tail_mass_bound(StateFamily::gilmore_perelomov, p, 0.8, D), 10 * tail);
    }
}

TEST(States, TruncationTooSmallNamesTheNeededDimension) {
    const auto p = ModelParams::from_s(1.0);
    try {
        gp_state(p, 0.9, StateTruncation{16, 1e-12, 100.0});
        FAIL() << "expected TruncationError";
    } catch (const TruncationError& e) {
        EXPECT_EQ(e.needed_dim(), required_dimension(StateFamily::gilmore_perelomov, p, 0.9, 1e-12));
        EXPECT_GT(e.tail(), 1e-12);
    }
}

TEST(States, DomainEnforcement) {
    const auto p = ModelParams::from_s(1.0);
    EXPECT_THROW(gp_state(p, 1.0), DomainError);
    EXPECT_THROW(gp_state(p, cd(0.8, 0.8)), DomainError);
    StateTruncation t = sized(StateFamily::barut_girardello, p, 100.0);
    EXPECT_NO_THROW(bg_state(p, 100.0, t));
    EXPECT_THROW(bg_state(p, 100.5, t), DomainError);
    t.bg_cap = 200.0;
    t.dim = required_dimension(StateFamily::barut_girardello, p, 150.0, t.tail_threshold);
    EXPECT_NO_THROW(bg_state(p, 150.0, t));
}

TEST(States, ContinuityAtOrigin) {
    const double eps = 1e-6;
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        const auto vac = number_state(p, 0, 128);
        EXPECT_LE(distance(bg_state(p, eps), vac), 2.0 * eps);
        EXPECT_LE(distance(gp_state(p, eps), vac), 2.0 * eps);
    }
}

TEST(BarutGirardello, EigenvectorOfLowering) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        for (auto z : {cd(0.0), cd(0.5, 0.0), cd(-1.0, 1.5), cd(0.0, -3.0), std::polar(3.0, 2.0)}) {
            const auto v = bg_state(p, z, sized(StateFamily::barut_girardello, p, std::abs(z), 1e-22));
            EXPECT_LE(bg_eigen_residual(v), 1e-8) << "s=" << s << " z=" << z;
        }
    }
}

TEST(BarutGirardello, MatchesRecursionSolve) {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> us(-0.5, 3.0), ur(0.0, 3.0), ut(0.0, 2 * std::numbers::pi);
    for (int k = 0; k < 20; ++k) {
        const auto p = ModelParams::from_s(us(rng));
        const cd z = std::polar(ur(rng), ut(rng));
        const auto t = sized(StateFamily::barut_girardello, p, std::abs(z));
        const auto a = bg_state(p, z, t);
        const auto b = bg_recursion_solve(p, z, t);
        for (std::size_t n = 0; n < a.dim(); ++n) EXPECT_LE(std::abs(a.coeffs[n] - b.coeffs[n]), 1e-12);
    }
}

TEST(BarutGirardello, LargeIndexCoefficientsStayFinite) {
    const auto p = ModelParams::from_s(1.0);
    auto t = sized(StateFamily::barut_girardello, p, 150.0);
    t.bg_cap = 150.0;
    const auto v = bg_state(p, 150.0, t);
    ASSERT_GT(v.dim(), 170u);
    for (const auto& c : v.coeffs) ASSERT_TRUE(std::isfinite(std::abs(c)));
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-10);
}

TEST(GilmorePerelomov, ParameterFromDisplacement) {
    const auto g = GPParameter::from_xi(0.6);
    EXPECT_NEAR(g.z.real(), 0.53704956699803527, 1e-15);
    EXPECT_EQ(g.z.imag(), 0.0);
    const auto h = GPParameter::from_xi(std::polar(5.0, 1.0));
    EXPECT_LT(std::abs(h.z), 1.0);
    EXPECT_NEAR(std::arg(h.z), 1.0, 1e-15);
    EXPECT_EQ(GPParameter::from_xi(0.0).z, cd(0.0));
}

TEST(GilmorePerelomov, DisplacementOracleMatchesSeries) {
    const auto p = ModelParams::from_s(1.0);
    const auto oracle = gp_displacement_oracle(p, 0.6, 256);
    const auto series = gp_state(p, std::tanh(0.6), StateTruncation{256, 1e-12, 100.0});
    for (std::size_t n = 0; n < 256; ++n) EXPECT_LE(std::abs(oracle.coeffs[n] - series.coeffs[n]), 1e-6);
}

TEST(GilmorePerelomov, DisplacementOracleComplexAndOtherS) {
    for (double s : {0.5, 2.0}) {
        const auto p = ModelParams::from_s(s);
        for (cd xi : {std::polar(1.2, 0.9), cd(-1.2, 0.0), std::polar(0.7, -2.5)}) {
            const auto oracle = gp_displacement_oracle(p, xi, 256);
            const auto series = gp_state(p, oracle.z, StateTruncation{256, 1e-12, 100.0});
            double worst = 0.0;
            for (std::size_t n = 0; n < 256; ++n) worst = std::max(worst, std::abs(oracle.coeffs[n] - series.coeffs[n]));
            EXPECT_LE(worst, 1e-6) << "s=" << s << " xi=" << xi;
        }
    }
}

TEST(GilmorePerelomov, OracleReportsLeakage) {
    EXPECT_THROW(gp_displacement_oracle(ModelParams::from_s(1.0), 3.0, 16), TruncationError);
    const auto v = gp_displacement_oracle(ModelParams::from_s(1.0), 0.0, 16);
    EXPECT_EQ(v.coeffs[0], cd(1.0));
}
