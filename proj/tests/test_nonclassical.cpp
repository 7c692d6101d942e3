#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "pho/nonclassical.hpp"
#include "pho/verify.hpp"

using namespace pho;
using cd = std::complex<double>;
using G = Generator;

namespace {

const double kS[] = {0.5, 1.0, 2.0};

} // namespace

TEST(Expectation, NumberStateDiagonalWords) {
    const auto p = ModelParams::from_s(1.0);
    const auto ket = number_state(p, 3, 16);
    EXPECT_NEAR(expectation(ket, {G::zero}).real(), m_zero(p, 3), 1e-14);
    EXPECT_NEAR(expectation(ket, {G::raise, G::lower}).real(), m_minus(p, 3) * m_minus(p, 3), 1e-13);
    EXPECT_NEAR(expectation(ket, {G::lower, G::raise}).real(), m_plus(p, 3) * m_plus(p, 3), 1e-13);
    EXPECT_EQ(expectation(ket, {G::raise}), cd(0.0));
}

TEST(Expectation, BarutGirardelloMoments) {
    for (double s : kS) {
        const auto p = ModelParams::from_s(s);
        const cd z(1.2, -0.7);
        const auto v = coherent_state(StateFamily::barut_girardello, p, z);
        EXPECT_NEAR(std::abs(expectation(v, {G::lower}) - z), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(expectation(v, {G::raise, G::lower}) - std::norm(z)), 0.0, 1e-12);
    }
}

TEST(Expectation, WordsMatchBruteForceDoubleSum) {
    std::mt19937_64 rng(99);
    const auto words = all_words(max_word_length);
    ASSERT_EQ(words.size(), 3u + 9u + 27u + 81u);
    for (double s : kS)
        for (std::size_t D : {4, 7, 12}) {
            const auto p = ModelParams::from_s(s);
            const DenseLadder dense(p, D);
            const auto v = random_state(p, D, D, rng);
            const ExpectationEngine e(v, LeakagePolicy::ignore);
            for (const auto& w : words) {
                const cd ref = brute_force_expectation(v, dense, w);
                EXPECT_LE(std::abs(e(w) - ref), 1e-12 * std::max(1.0, std::abs(ref)));
            }
        }
}

TEST(Expectation, LeakageIsReported) {
    const auto p = ModelParams::from_s(1.0);
    const auto top = number_state(p, 15, 16);
    EXPECT_THROW(expectation(top, {G::lower, G::raise}), AccuracyError);
    EXPECT_NO_THROW(expectation(top, {G::lower, G::raise}, LeakagePolicy::ignore));
    EXPECT_THROW(expectation(top, Word(5, G::zero)), DomainError);
}

TEST(Squeezing, VacuumIsMinimumUncertainty) {
    const auto vac = number_state(ModelParams::from_s(1.0), 0, 16);
    const auto first = squeezing_first(vac);
    EXPECT_NEAR(first.s_x, 0.0, 1e-14);
    EXPECT_NEAR(first.s_p, 0.0, 1e-14);
}

TEST(Squeezing, DefinitionMatchesCorrectedExpansion) {
    std::mt19937_64 rng(5);
    for (double s : kS)
        for (int k = 0; k < 30; ++k) {
            const auto v = random_state(ModelParams::from_s(s), 16, 10, rng);
            const auto a = squeezing_first(v);
            const auto b = squeezing_first_expanded(v);
            EXPECT_NEAR(a.s_x, b.s_x, 1e-12 * std::max(1.0, std::abs(a.s_x)));
            EXPECT_NEAR(a.s_p, b.s_p, 1e-12 * std::max(1.0, std::abs(a.s_p)));
        }
}

TEST(Squeezing, BoundedBelowByMinusOne) {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 50; ++k) {
        const auto v = random_state(ModelParams::from_s(1.0), 16, 10, rng);
        const auto a = squeezing_first(v);
        const auto b = squeezing_amplitude_squared(v);
        EXPECT_GE(a.s_x, -1.0);
        EXPECT_GE(a.s_p, -1.0);
        EXPECT_GE(b.s_x, -1.0);
        EXPECT_GE(b.s_p, -1.0);
    }
}

TEST(Mandel, NumberStates) {
    const auto p = ModelParams::from_s(1.0);
    EXPECT_NEAR(mandel_q(number_state(p, 1, 16)), -3.5, 1e-13);
    for (std::size_t n = 1; n < 8; ++n) {
        const double expected = m_minus(p, n - 1) * m_minus(p, n - 1) - m_minus(p, n) * m_minus(p, n) - 1.0;
        EXPECT_NEAR(mandel_q(number_state(p, n, 16)), expected, 1e-12);
    }
}

TEST(Mandel, UndefinedOnVacuum) {
    const auto p = ModelParams::from_s(1.0);
    EXPECT_THROW(mandel_q(number_state(p, 0, 16)), UndefinedStatistic);
    EXPECT_THROW(mandel_q(coherent_state(StateFamily::gilmore_perelomov, p, 0.0)), UndefinedStatistic);
}

TEST(FixedPoints, BarutGirardelloSqueezingVanishesAndQIsMinusOne) {
    for (double s : kS)
        for (auto z : {cd(0.3, 0.0), cd(-1.0, 1.0), cd(0.0, 2.0), std::polar(3.0, 0.4), cd(3.0, 0.0)}) {
            const auto m = metrics(coherent_state(StateFamily::barut_girardello, ModelParams::from_s(s), z));
            EXPECT_LE(std::abs(m.s_x1), 1e-8);
            EXPECT_LE(std::abs(m.s_p1), 1e-8);
            EXPECT_LE(std::abs(m.s_x2), 1e-8);
            EXPECT_LE(std::abs(m.s_p2), 1e-8);
            EXPECT_NEAR(m.q, -1.0, 1e-8);
            EXPECT_TRUE(m.error.empty());
        }
}

TEST(Scan, GilmorePerelomovSignStructure) {
    const auto rows = scan(StateFamily::gilmore_perelomov, ModelParams::from_s(1.0), -0.95, 0.95, 191);
    ASSERT_EQ(rows.size(), 191u);
    bool q_neg = false, q_pos = false;
    for (const auto& r : rows) {
        EXPECT_GE(r.s_x1, -1e-10);
        EXPECT_GE(r.s_x2, -1e-10);
        if (r.z == 0.0) {
            EXPECT_FALSE(r.error.empty());
            EXPECT_TRUE(std::isnan(r.q));
            continue;
        }
        EXPECT_LT(r.s_p1, 0.0) << "z=" << r.z;
        EXPECT_LT(r.s_p2, 0.0) << "z=" << r.z;
        q_neg = q_neg || r.q < 0.0;
        q_pos = q_pos || r.q > 0.0;
    }
    EXPECT_TRUE(q_neg);
    EXPECT_TRUE(q_pos);
}

TEST(Scan, MetricsAreEvenInRealZ) {
    for (auto [f, zmax] : {std::pair{StateFamily::gilmore_perelomov, 0.9}, std::pair{StateFamily::barut_girardello, 3.0}}) {
        const auto rows = scan(f, ModelParams::from_s(1.0), -zmax, zmax, 41);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& a = rows[i];
            const auto& b = rows[rows.size() - 1 - i];
            EXPECT_EQ(a.z.real(), -b.z.real());
            for (auto [u, v] : {std::pair{a.s_x1, b.s_x1}, std::pair{a.s_p1, b.s_p1}, std::pair{a.s_x2, b.s_x2},
                                std::pair{a.s_p2, b.s_p2}})
                EXPECT_NEAR(u, v, 1e-10 * std::max(1.0, std::abs(u)));
            if (!std::isnan(a.q)) { EXPECT_NEAR(a.q, b.q, 1e-10 * std::max(1.0, std::abs(a.q))); }
        }
    }
}

TEST(Scan, BarutGirardelloQColumn) {
    const auto rows = scan(StateFamily::barut_girardello, ModelParams::from_s(1.0), 0.0, 3.0, 31);
    EXPECT_TRUE(std::isnan(rows.front().q)); // the vacuum end of the range
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_NEAR(rows[i].q, -1.0, 1e-8);
}

TEST(Scan, Points) {
    EXPECT_TRUE(scan_points(0.0, 1.0, 0).empty());
    EXPECT_TRUE(scan_points(1.0, 0.0, 5).empty());
    const auto pts = scan_points(-0.95, 0.95, 191);
    EXPECT_EQ(pts[95], 0.0);
    EXPECT_EQ(pts.front(), -0.95);
    EXPECT_EQ(pts.back(), 0.95);
    EXPECT_THROW(scan(StateFamily::gilmore_perelomov, ModelParams::from_s(1.0), -1.0, 0.5, 3), DomainError);
}

TEST(Csv, HeaderAndNanToken) {
    std::ostringstream os;
    const auto rows = scan(StateFamily::gilmore_perelomov, ModelParams::from_s(1.0), 0.0, 0.0, 1);
    write_metrics_csv(os, rows);
    EXPECT_EQ(os.str(), "z,S_X1,S_P1,S_X2,S_P2,Q,trunc_dim,tail_bound\n0,0,0,0,0,nan,8,0\n");
    std::ostringstream empty;
    write_metrics_csv(empty, scan(StateFamily::gilmore_perelomov, ModelParams::from_s(1.0), 0.5, 0.1, 5));
    EXPECT_EQ(empty.str(), "z,S_X1,S_P1,S_X2,S_P2,Q,trunc_dim,tail_bound\n");
}

TEST(Csv, NumberFormatting) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-2.5), "-2.5");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.3333333333333333");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    EXPECT_EQ(std::stod(format_number(0.1 + 0.2)), 0.1 + 0.2);
}
