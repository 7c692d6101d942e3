#pragma once

// Truncated eigenket-basis matrices of the su(1,1) ladder algebra
//   M+|n> = m+(n)|n+1>,  M-|n> = m-(n)|n-1>,  M0|n> = (n + s/2 + 3/4)|n>
// and a grid-side check of the differential realization of M+-, A_n, A_n^+.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "spectrum.hpp"

namespace pho {

inline double m_plus(const ModelParams& p, std::size_t n) {
    const double dn = static_cast<double>(n);
    return std::sqrt((dn + 1.0) * (dn + p.s + 1.5));
}

inline double m_minus(const ModelParams& p, std::size_t n) {
    const double dn = static_cast<double>(n);
    return std::sqrt(dn * (dn + p.s + 0.5));
}

inline double m_zero(const ModelParams& p, std::size_t n) {
    return static_cast<double>(n) + 0.5 * p.s + 0.75;
}

struct TruncationSpec {
    std::size_t dim = 64;
    std::size_t interior_margin = 2;

    void validate() const {
        if (dim < 4) throw DomainError("TruncationSpec: dimension must be >= 4");
        if (interior_margin < 1 || interior_margin >= dim)
            throw DomainError("TruncationSpec: interior margin must be in [1, D)");
    }
    std::size_t interior() const { return dim - interior_margin; }
};

/// Real D x D matrix stored by diagonals; offset d = row - col, so a raising
/// operator lives on d = +1.
class BandedOperator {
public:
    BandedOperator() = default;
    BandedOperator(std::size_t dim, std::string label) : dim_(dim), label_(std::move(label)) {}

    std::size_t dim() const { return dim_; }
    const std::string& label() const { return label_; }
    const std::map<int, std::vector<double>>& bands() const { return bands_; }

    /// Sets entry (col + offset, col).
    void set(int offset, std::size_t col, double v) {
        auto& band = bands_[offset];
        if (band.empty()) band.assign(dim_, 0.0);
        band.at(col) = v;
    }

    double entry(std::size_t row, std::size_t col) const {
        const auto it = bands_.find(static_cast<int>(row) - static_cast<int>(col));
        return it == bands_.end() ? 0.0 : it->second[col];
    }

    int lowest_offset() const { return bands_.empty() ? 0 : bands_.begin()->first; }
    int highest_offset() const { return bands_.empty() ? 0 : bands_.rbegin()->first; }

    template <class T>
    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != dim_) throw DomainError("BandedOperator::apply: dimension mismatch");
        std::vector<T> out(dim_, T{});
        for (const auto& [d, band] : bands_) {
            for (std::size_t col = 0; col < dim_; ++col) {
                const auto row = static_cast<long long>(col) + d;
                if (row < 0 || row >= static_cast<long long>(dim_)) continue;
                out[static_cast<std::size_t>(row)] += band[col] * v[col];
            }
        }
        return out;
    }

    BandedOperator transpose() const {
        BandedOperator t(dim_, label_ + "^T");
        for (const auto& [d, band] : bands_)
            for (std::size_t col = 0; col < dim_; ++col) {
                const auto row = static_cast<long long>(col) + d;
                if (row < 0 || row >= static_cast<long long>(dim_)) continue;
                t.set(-d, static_cast<std::size_t>(row), band[col]);
            }
        return t;
    }

    friend BandedOperator operator*(const BandedOperator& a, const BandedOperator& b) {
        if (a.dim_ != b.dim_) throw DomainError("BandedOperator product: dimension mismatch");
        BandedOperator out(a.dim_, a.label_ + b.label_);
        const auto n = static_cast<long long>(a.dim_);
        for (const auto& [db, bb] : b.bands_)
            for (const auto& [da, ba] : a.bands_)
                for (long long col = 0; col < n; ++col) {
                    const long long mid = col + db;
                    const long long row = mid + da;
                    if (mid < 0 || mid >= n || row < 0 || row >= n) continue;
                    const double v = ba[static_cast<std::size_t>(mid)] * bb[static_cast<std::size_t>(col)];
                    auto& band = out.bands_[da + db];
                    if (band.empty()) band.assign(a.dim_, 0.0);
                    band[static_cast<std::size_t>(col)] += v;
                }
        return out;
    }

    friend BandedOperator operator+(BandedOperator a, const BandedOperator& b) {
        a.axpy(1.0, b);
        return a;
    }
    friend BandedOperator operator-(BandedOperator a, const BandedOperator& b) {
        a.axpy(-1.0, b);
        return a;
    }
    friend BandedOperator operator*(double k, BandedOperator a) {
        for (auto& [d, band] : a.bands_)
            for (double& v : band) v *= k;
        return a;
    }

    /// max |entry| over rows and columns < limit.
    double sup_norm(std::size_t limit) const {
        limit = std::min(limit, dim_);
        double m = 0.0;
        for (const auto& [d, band] : bands_)
            for (std::size_t col = 0; col < limit; ++col) {
                const auto row = static_cast<long long>(col) + d;
                if (row < 0 || row >= static_cast<long long>(limit)) continue;
                m = std::max(m, std::abs(band[col]));
            }
        return m;
    }

private:
    void axpy(double k, const BandedOperator& b) {
        if (dim_ != b.dim_) throw DomainError("BandedOperator sum: dimension mismatch");
        for (const auto& [d, band] : b.bands_) {
            auto& mine = bands_[d];
            if (mine.empty()) mine.assign(dim_, 0.0);
            for (std::size_t i = 0; i < dim_; ++i) mine[i] += k * band[i];
        }
    }

    std::size_t dim_ = 0;
    std::string label_;
    std::map<int, std::vector<double>> bands_;
};

inline BandedOperator commutator(const BandedOperator& a, const BandedOperator& b) {
    return a * b - b * a;
}

struct LadderMatrices {
    BandedOperator minus;
    BandedOperator plus;
    BandedOperator zero;
};

inline LadderMatrices ladder_matrices(const ModelParams& p, const TruncationSpec& trunc) {
    trunc.validate();
    const std::size_t D = trunc.dim;
    LadderMatrices L{BandedOperator(D, "M-"), BandedOperator(D, "M+"), BandedOperator(D, "M0")};
    for (std::size_t n = 0; n < D; ++n) {
        L.zero.set(0, n, m_zero(p, n));
        if (n + 1 < D) {
            L.plus.set(1, n, m_plus(p, n));
            L.minus.set(-1, n + 1, m_minus(p, n + 1));
        }
    }
    return L;
}

inline BandedOperator number_matrix(const TruncationSpec& trunc) {
    trunc.validate();
    BandedOperator N(trunc.dim, "N");
    for (std::size_t n = 0; n < trunc.dim; ++n) N.set(0, n, static_cast<double>(n));
    return N;
}

inline BandedOperator hamiltonian_matrix(const ModelParams& p, const TruncationSpec& trunc) {
    trunc.validate();
    BandedOperator H(trunc.dim, "H");
    for (std::size_t n = 0; n < trunc.dim; ++n) H.set(0, n, energy(p, static_cast<unsigned>(n)));
    return H;
}

/// Sup-norm residuals on the interior block. Entries of the products grow
/// like D^2, so the absolute residual carries a rounding floor of order
/// eps D^2; relative() divides by the largest product entry instead.
struct CommutatorReport {
    double minus_plus = 0.0;      // [M-, M+] - 2 M0 on the interior block
    double zero_plus = 0.0;       // [M0, M+] - M+
    double zero_minus = 0.0;      // [M0, M-] + M-
    double hamiltonian = 0.0;     // H - [M-, M+]
    double minus_plus_full = 0.0; // [M-, M+] - 2 M0 over the whole D x D matrix
    double scale = 1.0;           // largest |entry| of M-M+, M+M-, M0M+, M+M0 on the interior
    std::size_t interior = 0;

    double worst() const { return std::max({minus_plus, zero_plus, zero_minus, hamiltonian}); }
    double relative() const { return worst() / scale; }
};

inline CommutatorReport commutator_check(const ModelParams& p, const TruncationSpec& trunc) {
    const auto L = ladder_matrices(p, trunc);
    const auto H = hamiltonian_matrix(p, trunc);
    const auto mp = commutator(L.minus, L.plus);
    const std::size_t k = trunc.interior();
    CommutatorReport r;
    r.interior = k;
    r.minus_plus = (mp - 2.0 * L.zero).sup_norm(k);
    r.zero_plus = (commutator(L.zero, L.plus) - L.plus).sup_norm(k);
    r.zero_minus = (commutator(L.zero, L.minus) + L.minus).sup_norm(k);
    r.hamiltonian = (H - mp).sup_norm(k);
    r.minus_plus_full = (mp - 2.0 * L.zero).sup_norm(trunc.dim);
    r.scale = std::max({1.0, (L.minus * L.plus).sup_norm(k), (L.plus * L.minus).sup_norm(k),
                        (L.zero * L.plus).sup_norm(k), (L.plus * L.zero).sup_norm(k)});
    return r;
}

struct GridPairResidual {
    double raise = 0.0;
    double lower = 0.0;
};

namespace detail {

inline double relative_residual(std::span<const double> x, std::span<const double> lhs,
                                std::span<const double> rhs, std::span<const double> scale) {
    std::vector<double> diff(lhs.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lhs[i] - rhs[i];
    constexpr std::size_t margin = 2;
    return interior_l2(x, diff, margin) /
           std::max(interior_l2(x, rhs, margin), interior_l2(x, scale, margin));
}

} // namespace detail

/// Applies M+- = +-(x/2) d/dx + n + s/2 + 1/(3/2 -+ 1/2) - x^2/2 to psi_n on
/// the grid (N acting as the scalar n) and compares with m+-(n) psi_{n+-1}.
inline GridPairResidual grid_ladder_check(const ModelParams& p, unsigned n, const GridSpec& spec) {
    const auto psi = eigenfunction(p, n, spec);
    require_resolution(psi.nodes, energy(p, n + 1));
    const DiffOperator d(psi.nodes);
    const auto dpsi = d.first(psi.values);
    const auto& x = psi.nodes;
    const double dn = static_cast<double>(n);
    const std::size_t sz = x.size();

    std::vector<double> up(sz), up_ref(sz), down(sz), down_ref(sz);
    const double c_plus = 1.0 / (1.5 - 0.5);
    const double c_minus = 1.0 / (1.5 + 0.5);
    for (std::size_t i = 0; i < sz; ++i) {
        const double diag = dn + 0.5 * p.s - 0.5 * x[i] * x[i];
        up[i] = 0.5 * x[i] * dpsi[i] + (diag + c_plus) * psi.values[i];
        down[i] = -0.5 * x[i] * dpsi[i] + (diag + c_minus) * psi.values[i];
        up_ref[i] = m_plus(p, n) * eigenfunction_value(p, n + 1, x[i]);
        down_ref[i] = n == 0 ? 0.0 : m_minus(p, n) * eigenfunction_value(p, n - 1, x[i]);
    }
    return {detail::relative_residual(x, up, up_ref, psi.values),
            detail::relative_residual(x, down, down_ref, psi.values)};
}

/// A_n = -d/dx - x + (s+n+1)/x and A_n^+ = d/dx - x + (s+n+1)/x acting on psi_n:
///   A_n   psi_n = -(n/x) psi_n + (2/x) sqrt(n(n+s+1/2)) psi_{n-1}
///   A_n^+ psi_n = -((n+1)/x) psi_n + (2/x) sqrt((n+1)(n+s+3/2)) psi_{n+1}
/// Returns {A_n^+ residual, A_n residual}.
inline GridPairResidual grid_shift_check(const ModelParams& p, unsigned n, const GridSpec& spec) {
    const auto psi = eigenfunction(p, n, spec);
    require_resolution(psi.nodes, energy(p, n + 1));
    const DiffOperator d(psi.nodes);
    const auto dpsi = d.first(psi.values);
    const auto& x = psi.nodes;
    const double dn = static_cast<double>(n);
    const double c = chain_coefficient(p, n);
    const std::size_t sz = x.size();

    std::vector<double> a(sz), a_ref(sz), ad(sz), ad_ref(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        const double xi = x[i];
        const double f = psi.values[i];
        const double mult = (c / xi - xi) * f;
        a[i] = -dpsi[i] + mult;
        ad[i] = dpsi[i] + mult;
        a_ref[i] = -dn / xi * f +
                   (n == 0 ? 0.0 : 2.0 / xi * m_minus(p, n) * eigenfunction_value(p, n - 1, xi));
        ad_ref[i] = -(dn + 1.0) / xi * f + 2.0 / xi * m_plus(p, n) * eigenfunction_value(p, n + 1, xi);
    }
    return {detail::relative_residual(x, ad, ad_ref, psi.values),
            detail::relative_residual(x, a, a_ref, psi.values)};
}

} // namespace pho
