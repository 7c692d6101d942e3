#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pho/spectrum.hpp"

using namespace pho;

namespace {

const double kS[] = {0.5, 1.0, 2.0};

} // namespace

TEST(Params, FromCouplingInvertsQuadratic) {
    for (double g : {0.0, 0.75, 2.0, 6.0, 13.0}) {
        const auto p = ModelParams::from_g(g);
        EXPECT_NEAR(p.s * (p.s + 1.0), g, 1e-14 * std::max(1.0, g));
    }
    EXPECT_EQ(ModelParams::from_s(1.0).g, 2.0);
    EXPECT_THROW(ModelParams::from_s(-0.75), DomainError);
    EXPECT_THROW(ModelParams::from_g(-1.0), DomainError);
}

TEST(Potential, Values) {
    EXPECT_EQ(potential(ModelParams::from_s(0.0), 2.0), 2.0);
    EXPECT_EQ(potential(ModelParams::from_s(1.0), 1.0), 1.5);
    EXPECT_THROW(potential(ModelParams::from_s(1.0), 0.0), DomainError);
    EXPECT_THROW(potential(ModelParams::from_s(1.0), -1.0), DomainError);
}

TEST(Potential, MinimumAtFourthRootOfCoupling) {
    const auto p = ModelParams::from_s(1.0);
    const double xm = std::pow(p.g, 0.25);
    EXPECT_NEAR(potential(p, xm), std::sqrt(p.g), 1e-14);
    const double h = 1e-5;
    EXPECT_NEAR((potential(p, xm + h) - potential(p, xm - h)) / (2 * h), 0.0, 1e-9);
    EXPECT_GT(potential(p, xm * 1.01), potential(p, xm));
    EXPECT_GT(potential(p, xm * 0.99), potential(p, xm));
}

TEST(Energy, Values) {
    const auto p = ModelParams::from_s(1.0);
    EXPECT_EQ(energy(p, 0), 2.5);
    EXPECT_EQ(energy(p, 3), 8.5);
    for (unsigned n = 0; n < 40; ++n) EXPECT_EQ(energy(p, n + 1) - energy(p, n), 2.0);
}

TEST(Chain, RecurrenceReproducesClosedForms) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        const auto ch = build_factorization_chain(p, 31);
        ASSERT_EQ(ch.depth(), 31u);
        for (unsigned n = 0; n < ch.depth(); ++n) {
            EXPECT_EQ(ch.b[n], -1.0);
            EXPECT_NEAR(ch.c[n], s + n + 1.0, 1e-14 * ch.c[n]);
            EXPECT_NEAR(ch.E[n], energy(p, n), 1e-14 * ch.E[n]);
            if (n + 1 < ch.depth()) {
                const double lhs = ch.b[n + 1] * (2 * ch.c[n + 1] + 1) + 2 * ch.E[n + 1];
                const double rhs = ch.b[n] * (2 * ch.c[n] - 1) + 2 * ch.E[n];
                EXPECT_NEAR(lhs, rhs, 1e-14 * std::abs(rhs));
            }
        }
    }
}

TEST(Chain, GroundBranchMaximizesEnergy) {
    for (double s : kS) {
        const auto br = ground_branches(ModelParams::from_s(s));
        EXPECT_EQ(br.b_selected, -1.0);
        EXPECT_EQ(br.b_rejected, 1.0);
        EXPECT_EQ(br.E_selected, s + 1.5);
        EXPECT_GT(br.E_selected, br.E_rejected);
    }
}

TEST(Eigenfunction, GroundStateNormalization) {
    const auto p = ModelParams::from_s(1.0);
    const double n0 = normalization_constant(p, 0);
    EXPECT_NEAR(n0, 1.2265828778062044, 1e-14);
    EXPECT_NEAR(n0, std::sqrt(2.0 / std::tgamma(2.5)), 1e-15);
    const double x = 1.3;
    EXPECT_NEAR(eigenfunction_value(p, 0, x), n0 * x * x * std::exp(-x * x / 2), 1e-15);
    EXPECT_NEAR(eigenfunction_value(p, 1, x), 0.45616270984639032, 1e-14);
}

TEST(Eigenfunction, Orthonormal) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        for (unsigned m = 0; m <= 10; ++m)
            for (unsigned n = m; n <= 10; ++n)
                EXPECT_NEAR(eigen_overlap(p, m, n), m == n ? 1.0 : 0.0, 1e-8) << "s=" << s << " m=" << m << " n=" << n;
    }
}

TEST(Eigenfunction, SchrodingerResidual) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        for (unsigned n = 0; n <= 10; ++n)
            EXPECT_LE(schrodinger_residual(p, n, default_grid(p, n)), 1e-4) << "s=" << s << " n=" << n;
    }
}

TEST(Eigenfunction, SchrodingerResidualOnFixedGrid) {
    const auto p = ModelParams::from_s(1.0);
    for (auto law : {SpacingLaw::uniform, SpacingLaw::graded}) {
        const GridSpec g{0.05, 8.0, 2000, law};
        EXPECT_LE(schrodinger_residual(p, 0, g), 1e-5);
        EXPECT_LE(schrodinger_residual(p, 4, g), 1e-4);
    }
}

TEST(NullState, AnnihilatedAndDecaying) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        for (unsigned n = 0; n <= 4; ++n) {
            const auto spec = default_grid(p, n);
            EXPECT_LE(null_state_residual(p, n, spec), 1e-6);
            const auto xi = null_state(p, n, spec);
            double peak = 0.0;
            for (double v : xi.values) peak = std::max(peak, v);
            // the small-x end goes like x^{c_n}, so it only falls below a percent of the peak
            EXPECT_LT(xi.values.front(), 1e-2 * peak);
            EXPECT_LT(xi.values.back(), 1e-3 * peak);
        }
    }
}

TEST(Factorization, ChainBuildMatchesClosedForm) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        for (unsigned n = 0; n <= 4; ++n)
            EXPECT_LE(factorization_error(p, n, default_grid(p, n)), 1e-4) << "s=" << s << " n=" << n;
    }
}

TEST(Factorization, ChainNormalization) {
    const auto p = ModelParams::from_s(1.0);
    EXPECT_EQ(chain_normalization(p, 0), 1.0);
    EXPECT_NEAR(chain_normalization(p, 2), 1.0 / std::sqrt(4.0 * 2.0), 1e-15);
}

TEST(Factorization, CoarseGridIsRejected) {
    const auto p = ModelParams::from_s(1.0);
    EXPECT_THROW(factorization_build(p, 4, GridSpec{0.05, 8.0, 20, SpacingLaw::uniform}), AccuracyError);
}

TEST(OperatorProducts, GroundStateProbe) {
    const auto p = ModelParams::from_s(1.0);
    const auto probe = eigenfunction(p, 0, default_grid(p, 2));
    const auto r = operator_product_check(p, 0, probe);
    EXPECT_LE(r.dagger_first, 1e-4);
    EXPECT_LE(r.dagger_last, 1e-4);
    EXPECT_LE(r.commutator, 1e-4);
}

TEST(OperatorProducts, SupersymmetricPartner) {
    // a_0^+ a_0 psi_0 = (H - E_0) psi_0 = 0
    const auto p = ModelParams::from_s(1.0);
    const auto psi = eigenfunction(p, 0, default_grid(p, 0));
    const DiffOperator d(psi.nodes);
    const double c = chain_coefficient(p, 0);
    auto down = d.first(psi.values);
    for (std::size_t i = 0; i < down.size(); ++i) down[i] += (psi.nodes[i] - c / psi.nodes[i]) * psi.values[i];
    EXPECT_LE(sup_norm(down, 2) / sup_norm(psi.values), 1e-6);
}

TEST(Grid, GradedNodesAreMonotoneAndHitEndpoints) {
    const GridSpec g{1e-2, 9.0, 2000, SpacingLaw::graded};
    const auto x = g.nodes();
    ASSERT_EQ(x.size(), 2000u);
    EXPECT_EQ(x.front(), 1e-2);
    EXPECT_EQ(x.back(), 9.0);
    for (std::size_t i = 1; i < x.size(); ++i) ASSERT_GT(x[i], x[i - 1]);
    EXPECT_THROW((GridSpec{0.0, 1.0, 100}.nodes()), DomainError);
}

TEST(Grid, StencilsDifferentiatePolynomialsExactly) {
    const GridSpec g{0.1, 3.0, 200, SpacingLaw::graded};
    const auto f = sample(g, [](double x) { return x * x * x; });
    const DiffOperator d(f.nodes);
    const auto d1 = d.first(f.values);
    const auto d2 = d.second(f.values);
    for (std::size_t i = 2; i + 2 < f.size(); ++i) {
        const double x = f.nodes[i];
        EXPECT_NEAR(d1[i], 3 * x * x, 1e-9);
        EXPECT_NEAR(d2[i], 6 * x, 1e-7);
    }
}
