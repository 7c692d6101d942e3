#pragma once

// Expectation values of ladder-operator words and the nonclassicality
// metrics built from them: first-order and amplitude-squared squeezing
// and the generalized Mandel Q.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "states.hpp"

namespace pho {

enum class Generator { lower, raise, zero };

/// Operator product written left to right, e.g. {raise, lower} = M+ M-.
using Word = std::vector<Generator>;

inline constexpr std::size_t max_word_length = 4;

struct Term {
    std::complex<double> coeff;
    Word word;
};

/// Finite linear combination of words.
using OperatorPolynomial = std::vector<Term>;

inline OperatorPolynomial operator*(const OperatorPolynomial& a, const OperatorPolynomial& b) {
    OperatorPolynomial out;
    out.reserve(a.size() * b.size());
    for (const auto& ta : a)
        for (const auto& tb : b) {
            Word w = ta.word;
            w.insert(w.end(), tb.word.begin(), tb.word.end());
            out.push_back({ta.coeff * tb.coeff, std::move(w)});
        }
    return out;
}

inline OperatorPolynomial operator-(OperatorPolynomial a, const OperatorPolynomial& b) {
    for (const auto& t : b) a.push_back({-t.coeff, t.word});
    return a;
}

inline OperatorPolynomial commutator(const OperatorPolynomial& a, const OperatorPolynomial& b) {
    return a * b - b * a;
}

namespace quadrature_ops {

using namespace std::complex_literals;

/// X1 = (M- + M+)/2,  P1 = (M- - M+)/(2i)
inline OperatorPolynomial x1() { return {{0.5, {Generator::lower}}, {0.5, {Generator::raise}}}; }
inline OperatorPolynomial p1() {
    return {{-0.5i, {Generator::lower}}, {0.5i, {Generator::raise}}};
}
/// X2 = (M-^2 + M+^2)/2,  P2 = (M-^2 - M+^2)/(2i)
inline OperatorPolynomial x2() {
    return {{0.5, {Generator::lower, Generator::lower}}, {0.5, {Generator::raise, Generator::raise}}};
}
inline OperatorPolynomial p2() {
    return {{-0.5i, {Generator::lower, Generator::lower}}, {0.5i, {Generator::raise, Generator::raise}}};
}

} // namespace quadrature_ops

enum class LeakagePolicy {
    check,  // throw AccuracyError when the truncation edge can spoil a result
    ignore, // treat the truncated matrices as exact (finite-dimensional algebra)
};

/// Applies words to one state with the truncated ladder matrices of its dimension.
class ExpectationEngine {
public:
    explicit ExpectationEngine(const FockVector& state, LeakagePolicy policy = LeakagePolicy::check)
        : state_(state), policy_(policy) {
        if (state.dim() < 4) throw DomainError("expectation: state dimension must be >= 4");
        ladder_ = ladder_matrices(state.params, TruncationSpec{state.dim(), 1});
    }

    const FockVector& state() const { return state_; }

    /// Estimated absolute error of a length-L word from the truncation edge.
    double edge_leakage(std::size_t length) const {
        const std::size_t D = state_.dim();
        double edge = state_.tail_bound;
        for (std::size_t n = D - std::min(length, D); n < D; ++n) edge += std::norm(state_.coeffs[n]);
        return std::sqrt(edge) * std::pow(m_plus(state_.params, D + length), static_cast<double>(length));
    }

    std::complex<double> operator()(const Word& word) const {
        if (word.size() > max_word_length) throw DomainError("expectation: word longer than 4");
        std::vector<std::complex<double>> v = state_.coeffs;
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = op(*it).apply(std::span<const std::complex<double>>(v));
        std::complex<double> acc = 0.0;
        for (std::size_t n = 0; n < v.size(); ++n) acc += std::conj(state_.coeffs[n]) * v[n];
        if (policy_ == LeakagePolicy::ignore) return acc;
        const double leak = edge_leakage(word.size());
        if (leak > 1e-10 * std::max(1.0, std::abs(acc)))
            throw AccuracyError("expectation: truncation leakage too large", leak);
        return acc;
    }

    std::complex<double> operator()(const OperatorPolynomial& poly) const {
        std::complex<double> acc = 0.0;
        for (const auto& t : poly) acc += t.coeff * (*this)(t.word);
        return acc;
    }

private:
    const BandedOperator& op(Generator g) const {
        switch (g) {
        case Generator::lower: return ladder_.minus;
        case Generator::raise: return ladder_.plus;
        case Generator::zero: return ladder_.zero;
        }
        return ladder_.zero;
    }

    const FockVector& state_;
    LeakagePolicy policy_;
    LadderMatrices ladder_;
};

inline std::complex<double> expectation(const FockVector& state, const Word& word,
                                        LeakagePolicy policy = LeakagePolicy::check) {
    return ExpectationEngine(state, policy)(word);
}

struct SqueezingPair {
    double s_x = 0.0;
    double s_p = 0.0;
};

/// S = (Delta A)^2 / sqrt(|<[X, P]>|^2 / 4) - 1 for A in {X, P}; the
/// commutator is evaluated from the truncated matrices.
inline SqueezingPair squeezing(const ExpectationEngine& e, const OperatorPolynomial& X,
                               const OperatorPolynomial& P) {
    const auto variance = [&](const OperatorPolynomial& A) {
        const auto mean = e(A);
        return (e(A * A) - mean * mean).real();
    };
    const double denom = std::sqrt(0.25 * std::norm(e(commutator(X, P))));
    return {variance(X) / denom - 1.0, variance(P) / denom - 1.0};
}

inline SqueezingPair squeezing_first(const FockVector& state) {
    return squeezing(ExpectationEngine(state), quadrature_ops::x1(), quadrature_ops::p1());
}

inline SqueezingPair squeezing_amplitude_squared(const FockVector& state) {
    return squeezing(ExpectationEngine(state), quadrature_ops::x2(), quadrature_ops::p2());
}

/// First-order squeezing expanded in ladder moments (squared means in the
/// subtracted terms). Algebra check against the variance form above.
inline SqueezingPair squeezing_first_expanded(const FockVector& state) {
    const ExpectationEngine e(state);
    using G = Generator;
    const auto mm = e(Word{G::lower, G::lower});
    const auto pp = e(Word{G::raise, G::raise});
    const auto mp = e(Word{G::lower, G::raise});
    const auto pm = e(Word{G::raise, G::lower});
    const auto m = e(Word{G::lower});
    const auto p = e(Word{G::raise});
    const double m0 = e(Word{G::zero}).real();
    const auto sx = mm + mp + pm + pp - m * m - p * p - 2.0 * m * p;
    const auto sp = -mm + mp + pm - pp + m * m + p * p - 2.0 * m * p;
    return {sx.real() / (2.0 * m0) - 1.0, sp.real() / (2.0 * m0) - 1.0};
}

/// Q = (<M+^2 M-^2> - <M+M->^2) / <M+M-> - 1.
inline double mandel_q(const FockVector& state) {
    const ExpectationEngine e(state);
    using G = Generator;
    const double n1 = e(Word{G::raise, G::lower}).real();
    if (!(n1 > std::numeric_limits<double>::min()))
        throw UndefinedStatistic("mandel_q: <M+ M-> vanishes (state annihilated by M-)");
    const double n2 = e(Word{G::raise, G::raise, G::lower, G::lower}).real();
    return (n2 - n1 * n1) / n1 - 1.0;
}

struct MetricsRecord {
    std::complex<double> z = 0.0;
    double s_x1 = std::numeric_limits<double>::quiet_NaN();
    double s_p1 = std::numeric_limits<double>::quiet_NaN();
    double s_x2 = std::numeric_limits<double>::quiet_NaN();
    double s_p2 = std::numeric_limits<double>::quiet_NaN();
    double q = std::numeric_limits<double>::quiet_NaN();
    std::size_t trunc_dim = 0;
    double tail_bound = 0.0;
    std::string error; // empty when every metric was defined
};

/// Smallest D for which every word of length <= 4 has edge leakage <= target.
inline std::size_t metrics_dimension(StateFamily f, const ModelParams& p, double r, double target = 1e-13) {
    if (r == 0.0) return 8;
    const std::size_t L = max_word_length;
    const double ln_r = std::log(r);
    const double ln_norm = detail::ln_normalization(f, p, r);
    std::size_t D = std::max<std::size_t>(8, required_dimension(f, p, r, 1e-16));
    for (;; ++D) {
        double edge = tail_mass_bound(f, p, r, D);
        for (std::size_t n = D - L; n < D; ++n) edge += std::exp(2.0 * detail::ln_magnitude(f, p, n, ln_r, ln_norm));
        if (std::sqrt(edge) * std::pow(m_plus(p, D + L), static_cast<double>(L)) <= target) return D;
        if (D > 1'000'000) throw TruncationError("metrics_dimension: no feasible D", D, edge);
    }
}

inline FockVector coherent_state(StateFamily f, const ModelParams& p, std::complex<double> z) {
    StateTruncation t;
    t.dim = metrics_dimension(f, p, std::abs(z));
    t.tail_threshold = 1.0; // metrics_dimension already bounds the edge
    if (f == StateFamily::barut_girardello) return bg_state(p, z, t);
    if (f == StateFamily::gilmore_perelomov) return gp_state(p, z, t);
    throw DomainError("coherent_state: family must be bg or gp");
}

inline MetricsRecord metrics(const FockVector& state) {
    MetricsRecord rec;
    rec.z = state.z;
    rec.trunc_dim = state.dim();
    rec.tail_bound = state.tail_bound;
    const auto first = squeezing_first(state);
    const auto second = squeezing_amplitude_squared(state);
    rec.s_x1 = first.s_x;
    rec.s_p1 = first.s_p;
    rec.s_x2 = second.s_x;
    rec.s_p2 = second.s_p;
    try {
        rec.q = mandel_q(state);
    } catch (const UndefinedStatistic& e) {
        rec.error = e.what();
    }
    return rec;
}

inline MetricsRecord metrics_at(StateFamily f, const ModelParams& p, std::complex<double> z) {
    try {
        return metrics(coherent_state(f, p, z));
    } catch (const std::exception& e) {
        MetricsRecord rec;
        rec.z = z;
        rec.error = e.what();
        return rec;
    }
}

/// Evenly spaced real points zmin..zmax inclusive; steps == 0 or zmax < zmin gives none.
inline std::vector<double> scan_points(double zmin, double zmax, std::size_t steps) {
    std::vector<double> pts;
    if (steps == 0 || zmax < zmin) return pts;
    if (steps == 1) return {zmin};
    const double d = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double k = static_cast<double>(i);
        pts.push_back((zmin * (d - k) + zmax * k) / d);
    }
    return pts;
}

inline std::vector<MetricsRecord> scan(StateFamily f, const ModelParams& p, double zmin, double zmax,
                                       std::size_t steps) {
    if (f == StateFamily::gilmore_perelomov && steps > 0 && !(zmin > -1.0 && zmax < 1.0))
        throw DomainError("scan: Gilmore-Perelomov range must lie inside (-1, 1)");
    std::vector<MetricsRecord> rows;
    for (double z : scan_points(zmin, zmax, steps)) rows.push_back(metrics_at(f, p, z));
    return rows;
}

inline void write_metrics_csv(std::ostream& os, std::span<const MetricsRecord> rows) {
    os << "z,S_X1,S_P1,S_X2,S_P2,Q,trunc_dim,tail_bound\n";
    for (const auto& r : rows) {
        os << format_number(r.z.real()) << ',' << format_number(r.s_x1) << ',' << format_number(r.s_p1) << ','
           << format_number(r.s_x2) << ',' << format_number(r.s_p2) << ',' << format_number(r.q) << ','
           << r.trunc_dim << ',' << format_number(r.tail_bound) << '\n';
    }
}

} // namespace pho
