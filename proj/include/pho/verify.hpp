#pragma once

// The whole invariant suite as a flat list of named checks. Each check runs
// in isolation; an exception inside one marks only that check as failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "algebra.hpp"
#include "csv.hpp"
#include "identity.hpp"
#include "nonclassical.hpp"
#include "spectrum.hpp"
#include "states.hpp"

namespace pho {

struct CheckResult {
    std::string module;
    std::string name;
    double value = 0.0;     // worst residual observed (or 0/1 for structural checks)
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

class CheckList {
public:
    /// Runs body, which returns the worst residual; passes when it is <= tol.
    void at_most(const std::string& module, const std::string& name, double tol,
                 const std::function<double()>& body) {
        run(module, name, tol, [&](CheckResult& r) {
            r.value = body();
            r.passed = r.value <= tol;
        });
    }

    /// Runs body, which returns true on success; an optional note explains failures.
    void require(const std::string& module, const std::string& name,
                 const std::function<bool(std::string&)>& body) {
        run(module, name, 0.0, [&](CheckResult& r) {
            r.passed = body(r.detail);
            r.value = r.passed ? 0.0 : 1.0;
        });
    }

    const std::vector<CheckResult>& results() const { return items_; }

    bool all_passed() const {
        return std::all_of(items_.begin(), items_.end(), [](const CheckResult& r) { return r.passed; });
    }

private:
    void run(const std::string& module, const std::string& name, double tol,
             const std::function<void(CheckResult&)>& body) {
        CheckResult r{module, name, 0.0, tol, false, {}, 0.0};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.value = std::numeric_limits<double>::infinity();
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        items_.push_back(std::move(r));
    }

    std::vector<CheckResult> items_;
};

inline constexpr double reference_s[] = {0.5, 1.0, 2.0};

/// Dense ladder matrices for brute-force checks.
struct DenseLadder {
    Eigen::MatrixXd minus, plus, zero;

    DenseLadder(const ModelParams& p, std::size_t dim) {
        const auto D = static_cast<Eigen::Index>(dim);
        minus = plus = zero = Eigen::MatrixXd::Zero(D, D);
        for (Eigen::Index n = 0; n < D; ++n) {
            zero(n, n) = m_zero(p, static_cast<std::size_t>(n));
            if (n + 1 < D) {
                plus(n + 1, n) = m_plus(p, static_cast<std::size_t>(n));
                minus(n, n + 1) = m_minus(p, static_cast<std::size_t>(n + 1));
            }
        }
    }

    Eigen::MatrixXd word_matrix(const Word& w) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Identity(zero.rows(), zero.cols());
        for (Generator g : w) {
            const Eigen::MatrixXd& m = g == Generator::lower ? minus : g == Generator::raise ? plus : zero;
            out = out * m;
        }
        return out;
    }
};

/// sum_{m,n} conj(c_m) W_mn c_n
inline std::complex<double> brute_force_expectation(const FockVector& state, const DenseLadder& dense,
                                                    const Word& w) {
    const Eigen::MatrixXd W = dense.word_matrix(w);
    std::complex<double> acc = 0.0;
    for (std::size_t m = 0; m < state.dim(); ++m)
        for (std::size_t n = 0; n < state.dim(); ++n)
            acc += std::conj(state.coeffs[m]) * W(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) *
                   state.coeffs[n];
    return acc;
}

/// Normalized random complex vector supported on n < support.
inline FockVector random_state(const ModelParams& p, std::size_t dim, std::size_t support, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    FockVector v{std::vector<std::complex<double>>(dim, 0.0), p, StateFamily::number, 0.0, 0.0};
    for (std::size_t n = 0; n < std::min(dim, support); ++n) v.coeffs[n] = {gauss(rng), gauss(rng)};
    const double norm = std::sqrt(v.norm_squared());
    for (auto& c : v.coeffs) c /= norm;
    return v;
}

/// Every word over {M-, M+, M0} of length 1..max_len.
inline std::vector<Word> all_words(std::size_t max_len) {
    std::vector<Word> out;
    std::vector<Word> layer{Word{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (Generator g : {Generator::lower, Generator::raise, Generator::zero}) {
                Word x = w;
                x.push_back(g);
                next.push_back(x);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

#ifdef __SIZEOF_FLOAT128__
using wide_real = __float128;
#else
using wide_real = long double;
#endif

/// Laguerre polynomial from its explicit finite sum, accumulated in wide
/// precision so the alternating cancellation at large n x stays harmless.
inline double laguerre_explicit(unsigned n, double alpha, double x) {
    // term_0 = binom(n + alpha, n), term_k / term_{k-1} = -x (n - k + 1) / (k (k + alpha))
    wide_real term = 1;
    for (unsigned j = 1; j <= n; ++j) term = term * (static_cast<wide_real>(alpha) + j) / j;
    wide_real acc = term;
    for (unsigned k = 1; k <= n; ++k) {
        term = -term * static_cast<wide_real>(x) * (n - k + 1) / (k * (static_cast<wide_real>(alpha) + k));
        acc += term;
    }
    return static_cast<double>(acc);
}

namespace detail {

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

inline double metric_gap(const MetricsRecord& a, const MetricsRecord& b) {
    double worst = 0.0;
    for (auto [u, v] : {std::pair{a.s_x1, b.s_x1}, std::pair{a.s_p1, b.s_p1}, std::pair{a.s_x2, b.s_x2},
                        std::pair{a.s_p2, b.s_p2}, std::pair{a.q, b.q}}) {
        if (std::isnan(u) && std::isnan(v)) continue;
        worst = std::max(worst, rel_diff(u, v));
    }
    return worst;
}

inline std::vector<std::complex<double>> disk_points(double radius, int rings, int spokes) {
    std::vector<std::complex<double>> pts{0.0};
    for (int r = 1; r <= rings; ++r)
        for (int k = 0; k < spokes; ++k)
            pts.push_back(std::polar(radius * r / rings, 2.0 * std::numbers::pi * k / spokes));
    return pts;
}

} // namespace detail

inline void add_specfun_checks(CheckList& list) {
    const std::string mod = "specfun";
    list.at_most(mod, "laguerre recurrence vs explicit sum (n<=30)", 1e-10, [] {
        double worst = 0.0;
        for (double alpha : {0.5, 1.5, 2.7})
            for (unsigned n = 0; n <= 30; ++n) {
                for (int i = 1; i <= 80; ++i) {
                    const double x = 0.25 * i;
                    const double exact = laguerre_explicit(n, alpha, x);
                    worst = std::max(worst, std::abs(laguerre_assoc(n, alpha, x) - exact) / std::abs(exact));
                }
            }
        return worst;
    });
    list.at_most(mod, "laguerre derivative branches agree (n<=20)", 1e-10, [] {
        double worst = 0.0;
        for (double alpha : {0.5, 1.5, 2.7})
            for (unsigned n = 1; n <= 20; ++n)
                for (int i = 1; i <= 40; ++i) {
                    const double x = 0.5 * i;
                    const auto d = laguerre_derivative_identities(n, alpha, x);
                    worst = std::max(worst, std::abs(d.lowering - d.raising) /
                                                std::max(1.0, std::abs(d.lowering)));
                }
        return worst;
    });
    list.require(mod, "0F1 positive and increasing", [](std::string& why) {
        for (double c : {0.5, 1.5, 2.5, 3.5}) {
            double prev = 0.0;
            for (int i = 0; i <= 200; ++i) {
                const double v = hyp0f1(c, 0.25 * i);
                if (!(v > 0.0) || (i > 0 && !(v > prev))) {
                    why = "c=" + format_number(c) + " x=" + format_number(0.25 * i);
                    return false;
                }
                prev = v;
            }
        }
        return true;
    });
    list.at_most(mod, "Meijer-G moments k=1..8", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto spec = MeijerGSpec::coherent_bg(s);
            for (int k = 1; k <= 8; ++k) {
                const double root = (k - 1) + 0.5 * (s + 0.5) - 0.25;
                const auto q = integrate_doubling(
                    [&](double x) { return meijer_g(spec, x) * std::pow(x, k - 1); }, DomainTransform::half_line,
                    std::max(1.0, root * root), 1e-6);
                const double exact = std::exp(ln_gamma(k) + ln_gamma(k + s + 0.5));
                worst = std::max(worst, std::abs(q.value - exact) / exact);
            }
        }
        return worst;
    });
    list.require(mod, "Meijer-G non-negative on (0, 50]", [](std::string& why) {
        for (double s : reference_s) {
            const auto spec = MeijerGSpec::coherent_bg(s);
            for (int i = 1; i <= 100; ++i) {
                const double x = 0.5 * i;
                if (!(meijer_g(spec, x) >= 0.0)) {
                    why = "s=" + format_number(s) + " x=" + format_number(x);
                    return false;
                }
            }
        }
        return true;
    });
}

inline void add_spectrum_checks(CheckList& list) {
    const std::string mod = "spectrum";
    list.at_most(mod, "orthonormality (n<=10)", 1e-8, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned m = 0; m <= 10; ++m)
                for (unsigned n = m; n <= 10; ++n)
                    worst = std::max(worst, std::abs(eigen_overlap(p, m, n) - (m == n ? 1.0 : 0.0)));
        }
        return worst;
    });
    list.at_most(mod, "Schrodinger residual (n<=10)", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned n = 0; n <= 10; ++n) worst = std::max(worst, schrodinger_residual(p, n, default_grid(p, n)));
        }
        return worst;
    });
    list.at_most(mod, "chain recurrence matches closed forms", 1e-14, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            const auto ch = build_factorization_chain(p, 31);
            for (unsigned n = 0; n < ch.depth(); ++n) {
                worst = std::max(worst, std::abs(ch.b[n] + 1.0));
                worst = std::max(worst, std::abs(ch.c[n] - chain_coefficient(p, n)) / ch.c[n]);
                worst = std::max(worst, std::abs(ch.E[n] - energy(p, n)) / ch.E[n]);
                if (n + 1 < ch.depth()) {
                    const double lhs = ch.b[n + 1] * (2.0 * ch.c[n + 1] + 1.0) + 2.0 * ch.E[n + 1];
                    const double rhs = ch.b[n] * (2.0 * ch.c[n] - 1.0) + 2.0 * ch.E[n];
                    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
                }
            }
        }
        return worst;
    });
    list.at_most(mod, "level spacing equals 2", 1e-14, [] {
        double worst = 0.0;
        for (double s : reference_s)
            for (unsigned n = 0; n < 50; ++n) {
                const auto p = ModelParams::from_s(s);
                worst = std::max(worst, std::abs(energy(p, n + 1) - energy(p, n) - 2.0));
            }
        return worst;
    });
    list.require(mod, "ground branch b0=-1 maximizes E0", [](std::string& why) {
        for (double s : reference_s) {
            const auto br = ground_branches(ModelParams::from_s(s));
            if (br.b_selected != -1.0 || !(br.E_selected > br.E_rejected) ||
                std::abs(br.E_selected - (s + 1.5)) > 1e-14) {
                why = "s=" + format_number(s);
                return false;
            }
        }
        return true;
    });
    list.at_most(mod, "factorization chain vs closed form (n<=4)", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned n = 0; n <= 4; ++n) worst = std::max(worst, factorization_error(p, n, default_grid(p, n)));
        }
        return worst;
    });
    list.at_most(mod, "null states annihilated by a_n (n<=4)", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned n = 0; n <= 4; ++n) worst = std::max(worst, null_state_residual(p, n, default_grid(p, n)));
        }
        return worst;
    });
    list.at_most(mod, "operator products a^+a, aa^+ and commutator", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned n = 0; n <= 4; ++n) {
                const auto r = operator_product_check(p, n, eigenfunction(p, 0, default_grid(p, 2)));
                worst = std::max({worst, r.dagger_first, r.dagger_last, r.commutator});
            }
        }
        return worst;
    });
}

inline void add_algebra_checks(CheckList& list) {
    const std::string mod = "algebra";
    list.at_most(mod, "interior commutators, relative (D in 16, 64, 256)", 1e-12, [] {
        double worst = 0.0;
        for (double s : reference_s)
            for (std::size_t D : {16, 64, 256})
                worst = std::max(worst, commutator_check(ModelParams::from_s(s), TruncationSpec{D, 2}).relative());
        return worst;
    });
    list.require(mod, "M+ is the transpose of M-", [](std::string& why) {
        for (double s : reference_s) {
            const auto L = ladder_matrices(ModelParams::from_s(s), TruncationSpec{64, 2});
            for (std::size_t i = 0; i < 64; ++i)
                for (std::size_t j = 0; j < 64; ++j)
                    if (L.plus.entry(i, j) != L.minus.entry(j, i)) {
                        why = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                        return false;
                    }
        }
        return true;
    });
    list.at_most(mod, "H diagonal with gap 2", 1e-12, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto H = hamiltonian_matrix(ModelParams::from_s(s), TruncationSpec{64, 2});
            for (std::size_t n = 0; n + 1 < 64; ++n) {
                worst = std::max(worst, std::abs(H.entry(n + 1, n + 1) - H.entry(n, n) - 2.0));
                worst = std::max(worst, std::abs(H.entry(n + 1, n)) + std::abs(H.entry(n, n + 1)));
            }
        }
        return worst;
    });
    list.at_most(mod, "grid ladder realization (n<=6)", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned n = 0; n <= 6; ++n) {
                const auto r = grid_ladder_check(p, n, default_grid(p, n + 1));
                worst = std::max({worst, r.raise, r.lower});
            }
        }
        return worst;
    });
    list.at_most(mod, "grid shift operators A_n, A_n^+ (n<=6)", 1e-4, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (unsigned n = 0; n <= 6; ++n) {
                const auto r = grid_shift_check(p, n, default_grid(p, n + 1));
                worst = std::max({worst, r.raise, r.lower});
            }
        }
        return worst;
    });
    list.require(mod, "number operator differs from M+M-", [](std::string& why) {
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            const TruncationSpec t{32, 2};
            const auto L = ladder_matrices(p, t);
            const auto pm = L.plus * L.minus;
            const auto N = number_matrix(t);
            double gap = 0.0;
            for (std::size_t n = 0; n < t.interior(); ++n) {
                const double dn = static_cast<double>(n);
                if (std::abs(pm.entry(n, n) - dn * (dn + s + 0.5)) > 1e-12 * (1.0 + dn * dn)) {
                    why = "diag(M+M-) wrong at n=" + std::to_string(n);
                    return false;
                }
                gap = std::max(gap, std::abs(pm.entry(n, n) - N.entry(n, n)));
            }
            if (!(gap > 0.0)) {
                why = "diag(M+M-) equals diag(N)";
                return false;
            }
        }
        return true;
    });
}

inline void add_states_checks(CheckList& list) {
    const std::string mod = "states";
    list.at_most(mod, "BG eigen-residual on |z|<=3", 1e-8, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (auto z : detail::disk_points(3.0, 6, 12)) {
                // the cut-off term |z c_D| must sit well below the target
                StateTruncation t;
                t.tail_threshold = 1e-22;
                t.dim = required_dimension(StateFamily::barut_girardello, p, std::abs(z), t.tail_threshold);
                worst = std::max(worst, bg_eigen_residual(bg_state(p, z, t)));
            }
        }
        return worst;
    });
    list.at_most(mod, "GP series vs displacement exponential (|xi|<=1.2, D=256)", 1e-6, [] {
        double worst = 0.0;
        const auto p = ModelParams::from_s(1.0);
        for (auto xi : detail::disk_points(1.2, 4, 3)) {
            const auto oracle = gp_displacement_oracle(p, xi, 256);
            const auto series = gp_state(p, oracle.z, StateTruncation{256, 1e-12, 100.0});
            for (std::size_t n = 0; n < 256; ++n)
                worst = std::max(worst, std::abs(oracle.coeffs[n] - series.coeffs[n]));
        }
        return worst;
    });
    list.at_most(mod, "unit norm within tail bound", 1e-10, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (auto z : detail::disk_points(3.0, 3, 5)) {
                StateTruncation t;
                t.dim = required_dimension(StateFamily::barut_girardello, p, std::abs(z), t.tail_threshold);
                const auto v = bg_state(p, z, t);
                worst = std::max({worst, std::abs(v.norm_squared() - 1.0), v.tail_bound * 1e2});
            }
            for (auto z : detail::disk_points(0.9, 3, 5)) {
                StateTruncation t;
                t.dim = required_dimension(StateFamily::gilmore_perelomov, p, std::abs(z), t.tail_threshold);
                const auto v = gp_state(p, z, t);
                worst = std::max({worst, std::abs(v.norm_squared() - 1.0), v.tail_bound * 1e2});
            }
        }
        return worst;
    });
    list.require(mod, "continuity at z -> 0", [](std::string& why) {
        constexpr double eps = 1e-6;
        constexpr double C = 2.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (const auto& v : {bg_state(p, eps), gp_state(p, eps)}) {
                double d = std::norm(v.coeffs[0] - 1.0);
                for (std::size_t n = 1; n < v.dim(); ++n) d += std::norm(v.coeffs[n]);
                if (!(std::sqrt(d) <= C * eps)) {
                    why = std::string(to_string(v.label)) + " s=" + format_number(s);
                    return false;
                }
            }
        }
        return true;
    });
    list.require(mod, "domain enforcement", [](std::string& why) {
        const auto p = ModelParams::from_s(1.0);
        for (double r : {1.0, 1.5}) {
            try {
                gp_state(p, r);
                why = "gp_state accepted |z|=" + format_number(r);
                return false;
            } catch (const DomainError&) {
            }
        }
        StateTruncation t;
        t.dim = required_dimension(StateFamily::barut_girardello, p, t.bg_cap, t.tail_threshold);
        bg_state(p, t.bg_cap, t);
        try {
            bg_state(p, 2.0 * t.bg_cap, t);
            why = "bg_state accepted |z| beyond the cap";
            return false;
        } catch (const DomainError&) {
        }
        return true;
    });
    list.at_most(mod, "bg_state vs recursion solve", 1e-12, [] {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> us(-0.5, 3.0), ur(0.0, 3.0), ut(0.0, 2.0 * std::numbers::pi);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const auto p = ModelParams::from_s(us(rng));
            const auto z = std::polar(ur(rng), ut(rng));
            StateTruncation t;
            t.dim = required_dimension(StateFamily::barut_girardello, p, std::abs(z), t.tail_threshold);
            const auto a = bg_state(p, z, t);
            const auto b = bg_recursion_solve(p, z, t);
            for (std::size_t n = 0; n < a.dim(); ++n) worst = std::max(worst, std::abs(a.coeffs[n] - b.coeffs[n]));
        }
        return worst;
    });
}

inline void add_nonclassical_checks(CheckList& list) {
    const std::string mod = "nonclassical";
    list.at_most(mod, "squeezing definition vs expansion (random states)", 1e-12, [] {
        std::mt19937_64 rng(7);
        double worst = 0.0;
        for (double s : reference_s)
            for (int k = 0; k < 20; ++k) {
                const auto v = random_state(ModelParams::from_s(s), 16, 10, rng);
                const auto a = squeezing_first(v);
                const auto b = squeezing_first_expanded(v);
                worst = std::max({worst, detail::rel_diff(a.s_x, b.s_x), detail::rel_diff(a.s_p, b.s_p)});
            }
        return worst;
    });
    list.at_most(mod, "metrics even in real z", 1e-10, [] {
        double worst = 0.0;
        const auto p = ModelParams::from_s(1.0);
        for (auto [f, zmax] : {std::pair{StateFamily::gilmore_perelomov, 0.9},
                               std::pair{StateFamily::barut_girardello, 3.0}}) {
            const auto rows = scan(f, p, -zmax, zmax, 37);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!rows[i].error.empty() && rows[i].z != 0.0) throw AccuracyError(rows[i].error, 0.0);
                worst = std::max(worst, detail::metric_gap(rows[i], rows[rows.size() - 1 - i]));
            }
        }
        return worst;
    });
    list.at_most(mod, "BG fixed points S=0, Q=-1 (|z|<=3)", 1e-8, [] {
        double worst = 0.0;
        for (double s : reference_s)
            for (auto z : detail::disk_points(3.0, 6, 8)) {
                if (z == 0.0) continue; // Q is 0/0 on the vacuum
                const auto m = metrics(coherent_state(StateFamily::barut_girardello, ModelParams::from_s(s), z));
                worst = std::max({worst, std::abs(m.s_x1), std::abs(m.s_p1), std::abs(m.s_x2), std::abs(m.s_p2),
                                  std::abs(m.q + 1.0)});
            }
        return worst;
    });
    list.require(mod, "GP sign structure (s=1)", [](std::string& why) {
        const auto rows = scan(StateFamily::gilmore_perelomov, ModelParams::from_s(1.0), -0.95, 0.95, 191);
        bool q_neg = false, q_pos = false;
        for (const auto& r : rows) {
            const bool origin = r.z == 0.0;
            if (!origin && !r.error.empty()) {
                why = r.error;
                return false;
            }
            if (!(r.s_x1 >= -1e-10 && r.s_x2 >= -1e-10) || (!origin && !(r.s_p1 < 0.0 && r.s_p2 < 0.0))) {
                why = "z=" + format_number(r.z.real());
                return false;
            }
            q_neg = q_neg || r.q < 0.0;
            q_pos = q_pos || r.q > 0.0;
        }
        if (!(q_neg && q_pos)) why = "Q does not change sign";
        return q_neg && q_pos;
    });
    list.at_most(mod, "expectation words vs brute-force double sum (D<=12)", 1e-12, [] {
        std::mt19937_64 rng(11);
        const auto words = all_words(max_word_length);
        double worst = 0.0;
        for (double s : reference_s)
            for (std::size_t D : {4, 8, 12}) {
                const auto p = ModelParams::from_s(s);
                const DenseLadder dense(p, D);
                const auto v = random_state(p, D, D, rng);
                const ExpectationEngine e(v, LeakagePolicy::ignore);
                for (const auto& w : words)
                    worst = std::max(worst, detail::rel_diff(e(w), brute_force_expectation(v, dense, w)));
            }
        return worst;
    });
}

inline void add_identity_checks(CheckList& list) {
    const std::string mod = "identity";
    for (StateFamily f : {StateFamily::gilmore_perelomov, StateFamily::barut_girardello}) {
        const unsigned n_max = f == StateFamily::gilmore_perelomov ? 10 : 8;
        const double tol = default_identity_tolerance(f);
        list.at_most(mod, std::string(to_string(f)) + " moments (n<=" + std::to_string(n_max) + ")", tol, [=] {
            double worst = 0.0;
            for (double s : reference_s)
                worst = std::max(worst, verify_identity(f, ModelParams::from_s(s), n_max, tol).max_rel_err);
            return worst;
        });
    }
    list.require(mod, "moments computed per n independently", [](std::string& why) {
        const auto p = ModelParams::from_s(1.0);
        const auto full = verify_identity(StateFamily::gilmore_perelomov, p, 6, 1e-8);
        for (unsigned n = 0; n <= 6; ++n) {
            const auto alone = identity_moment_quadrature(StateFamily::gilmore_perelomov, p, n, 1e-8);
            if (alone.value != full.rows[n].quadrature) {
                why = "n=" + std::to_string(n);
                return false;
            }
        }
        return true;
    });
    list.at_most(mod, "GP weight equals the Beta density", 1e-14, [] {
        double worst = 0.0;
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            const double k = std::exp(ln_gamma(s + 1.5) - ln_gamma(s + 0.5));
            for (int i = 1; i < 100; ++i) {
                const double x = 0.01 * i;
                const double beta = k * std::pow(1.0 - x, s - 0.5);
                worst = std::max(worst, std::abs(weight_gp_tilde(p, x) - beta) / beta);
            }
        }
        return worst;
    });
    list.require(mod, "weights non-negative", [](std::string& why) {
        for (double s : reference_s) {
            const auto p = ModelParams::from_s(s);
            for (int i = 1; i < 100; ++i) {
                const double x = 0.01 * i;
                if (!(weight_gp(p, x) >= 0.0) || !(weight_bg(p, 0.3 * i) >= 0.0)) {
                    why = "s=" + format_number(s) + " i=" + std::to_string(i);
                    return false;
                }
            }
        }
        return true;
    });
}

inline CheckList run_all_checks() {
    CheckList list;
    add_specfun_checks(list);
    add_spectrum_checks(list);
    add_algebra_checks(list);
    add_states_checks(list);
    add_nonclassical_checks(list);
    add_identity_checks(list);
    return list;
}

inline void write_check_table(std::ostream& os, const CheckList& list) {
    os << "module,check,value,tolerance,status,seconds,detail\n";
    for (const auto& r : list.results())
        os << r.module << ',' << '"' << r.name << '"' << ',' << format_number(r.value) << ','
           << format_number(r.tolerance) << ',' << (r.passed ? "PASS" : "FAIL") << ',' << format_number(r.seconds)
           << ',' << '"' << r.detail << '"' << '\n';
}

} // namespace pho
