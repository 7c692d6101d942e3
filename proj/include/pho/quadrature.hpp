#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace pho {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

/// Gauss-Legendre nodes by Newton iteration on P_n.
inline GaussLegendreRule gauss_legendre(std::size_t n) {
    if (n == 0) throw DomainError("gauss_legendre: n must be positive");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Fixed-order composite Gauss-Legendre over [a, b] with equal panels.
template <class F>
double integrate_composite(F&& f, double a, double b, std::size_t panels,
                           const GaussLegendreRule& rule) {
    const double width = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + width * static_cast<double>(p);
        const double mid = lo + 0.5 * width;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
        total += 0.5 * width * sum;
    }
    return total;
}

/// Domain maps applied before Gauss-Legendre on t in (0, 1).
enum class DomainTransform {
    unit_interval,   // x = t on (0, 1)
    half_line,       // x = scale * t / (1 - t) on (0, inf)
    unit_right_edge, // x = 1 - (1 - t)^2 on (0, 1); clusters nodes at x -> 1
};

/// Node/weight set in the physical variable, weights already include the Jacobian.
struct QuadratureScheme {
    DomainTransform transform = DomainTransform::unit_interval;
    std::size_t order = 0;
    double scale = 1.0;
    double error_estimate = 0.0;
    std::vector<double> x;
    std::vector<double> w;

    static QuadratureScheme make(DomainTransform transform, std::size_t order, double scale = 1.0) {
        if (!(scale > 0.0)) throw DomainError("QuadratureScheme: scale must be positive");
        QuadratureScheme q;
        q.transform = transform;
        q.order = order;
        q.scale = scale;
        const auto rule = gauss_legendre(order);
        q.x.reserve(order);
        q.w.reserve(order);
        for (std::size_t i = 0; i < order; ++i) {
            const double t = 0.5 * (rule.nodes[i] + 1.0);
            const double wt = 0.5 * rule.weights[i];
            switch (transform) {
            case DomainTransform::unit_interval:
                q.x.push_back(t);
                q.w.push_back(wt);
                break;
            case DomainTransform::half_line: {
                const double u = 1.0 - t;
                q.x.push_back(scale * t / u);
                q.w.push_back(wt * scale / (u * u));
                break;
            }
            case DomainTransform::unit_right_edge: {
                const double u = 1.0 - t;
                q.x.push_back(1.0 - u * u);
                q.w.push_back(wt * 2.0 * u);
                break;
            }
            }
        }
        return q;
    }

    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(x[i]);
        return sum;
    }
};

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t order = 0;
    bool converged = false;
};

/// Doubles the node count until two successive estimates agree to rel_tol.
template <class F>
AdaptiveResult integrate_doubling(F&& f, DomainTransform transform, double scale, double rel_tol,
                                  std::size_t start_order = 32, std::size_t max_order = 2048) {
    AdaptiveResult r;
    double prev = QuadratureScheme::make(transform, start_order, scale).integrate(f);
    for (std::size_t order = 2 * start_order; order <= max_order; order *= 2) {
        const double cur = QuadratureScheme::make(transform, order, scale).integrate(f);
        r.value = cur;
        r.order = order;
        r.error_estimate = std::abs(cur - prev);
        if (r.error_estimate <= rel_tol * std::abs(cur)) {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

} // namespace pho
