#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pho {

enum class SpacingLaw {
    uniform,
    graded, // geometric near x_min, switching to uniform once the spacings match
};

struct GridSpec {
    double x_min = 1e-2;
    double x_max = 8.0;
    std::size_t count = 2000;
    SpacingLaw law = SpacingLaw::graded;

    void validate() const {
        if (!(x_min > 0.0)) throw DomainError("GridSpec: x_min must be positive");
        if (!(x_max > x_min)) throw DomainError("GridSpec: x_max must exceed x_min");
        if (count < 8) throw DomainError("GridSpec: need at least 8 nodes");
    }

    std::vector<double> nodes() const {
        validate();
        std::vector<double> x(count);
        const auto last = count - 1;
        if (law == SpacingLaw::uniform) {
            const double h = (x_max - x_min) / static_cast<double>(last);
            for (std::size_t i = 0; i < count; ++i) x[i] = x_min + h * static_cast<double>(i);
            x[last] = x_max;
            return x;
        }
        const std::size_t n_geo = count / 4;
        const std::size_t n_uni = last - n_geo;
        const double dg = static_cast<double>(n_geo);
        const auto mismatch = [&](double r) {
            const double xs = x_min * std::pow(r, dg);
            return xs * (1.0 - 1.0 / r) - (x_max - xs) / static_cast<double>(n_uni);
        };
        double lo = 1.0;
        double hi = std::pow(x_max / x_min, 1.0 / dg);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mismatch(mid) < 0.0 ? lo : hi) = mid;
        }
        const double r = 0.5 * (lo + hi);
        for (std::size_t i = 0; i <= n_geo; ++i) x[i] = x_min * std::pow(r, static_cast<double>(i));
        const double xs = x[n_geo];
        const double h = (x_max - xs) / static_cast<double>(n_uni);
        for (std::size_t i = 1; i <= n_uni; ++i) x[n_geo + i] = xs + h * static_cast<double>(i);
        x[last] = x_max;
        return x;
    }
};

/// Real function sampled on a positive half-line grid.
struct GridFunction {
    GridSpec spec;
    std::vector<double> nodes;
    std::vector<double> values;

    std::size_t size() const { return nodes.size(); }
};

template <class F>
GridFunction sample(const GridSpec& spec, F&& f) {
    GridFunction g{spec, spec.nodes(), {}};
    g.values.reserve(g.nodes.size());
    for (double x : g.nodes) g.values.push_back(f(x));
    return g;
}

/// Finite-difference weights at z for derivative orders 0..max_order
/// (Fornberg's recursion) over arbitrary distinct nodes.
inline std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x,
                                                    std::size_t max_order) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(max_order + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return c;
}

/// First and second derivative stencils: centred 5-point in the interior,
/// 3-point one-sided on the two outermost rows at each end.
class DiffOperator {
public:
    explicit DiffOperator(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        const std::size_t n = nodes_.size();
        if (n < 5) throw DomainError("DiffOperator: need at least 5 nodes");
        rows_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            Row& row = rows_[i];
            if (i >= 2 && i + 2 < n) {
                row.start = i - 2;
                row.width = 5;
            } else {
                row.start = i < 2 ? 0 : n - 3;
                row.width = 3;
            }
            const auto w = fd_weights(nodes_[i], std::span<const double>(nodes_).subspan(row.start, row.width), 2);
            for (std::size_t k = 0; k < row.width; ++k) {
                row.d1[k] = w[k][1];
                row.d2[k] = w[k][2];
            }
        }
    }

    const std::vector<double>& nodes() const { return nodes_; }

    std::vector<double> first(std::span<const double> f) const { return apply(f, &Row::d1); }
    std::vector<double> second(std::span<const double> f) const { return apply(f, &Row::d2); }

private:
    struct Row {
        std::size_t start = 0;
        std::size_t width = 0;
        std::array<double, 5> d1{};
        std::array<double, 5> d2{};
    };

    std::vector<double> apply(std::span<const double> f, std::array<double, 5> Row::*which) const {
        if (f.size() != nodes_.size()) throw DomainError("DiffOperator: size mismatch");
        std::vector<double> out(f.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Row& row = rows_[i];
            double acc = 0.0;
            for (std::size_t k = 0; k < row.width; ++k) acc += (row.*which)[k] * f[row.start + k];
            out[i] = acc;
        }
        return out;
    }

    std::vector<double> nodes_;
    std::vector<Row> rows_;
};

/// Trapezoidal L2 norm over rows [margin, n - margin).
inline double interior_l2(std::span<const double> x, std::span<const double> f, std::size_t margin) {
    if (x.size() != f.size() || x.size() <= 2 * margin + 1)
        throw DomainError("interior_l2: size mismatch or margin too large");
    double acc = 0.0;
    for (std::size_t i = margin; i + 1 < x.size() - margin; ++i)
        acc += 0.5 * (x[i + 1] - x[i]) * (f[i] * f[i] + f[i + 1] * f[i + 1]);
    return std::sqrt(acc);
}

inline double sup_norm(std::span<const double> f, std::size_t margin = 0) {
    double m = 0.0;
    for (std::size_t i = margin; i + margin < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

inline double max_spacing(std::span<const double> x) {
    double h = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) h = std::max(h, x[i] - x[i - 1]);
    return h;
}

} // namespace pho
