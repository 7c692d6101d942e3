#pragma once

// Pseudoharmonic eigenproblem on the half-line x > 0 (hbar = m = omega = 1).
//
// The factorization hierarchy uses a_n = (p + i f_n)/sqrt(2) with
// f_n(x) = b_n x + c_n / x. On the grid we work with the real operators
//   D_n^- = d/dx + x - c_n/x      (a_n   = -i D_n^- / sqrt 2)
//   D_n^+ = d/dx - x + c_n/x      (a_n^+ = -i D_n^+ / sqrt 2)
// so every unimodular factor (-i)^k is dropped and signs are fixed by N_n > 0.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "grid.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace pho {

inline double potential(const ModelParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("potential: x must be positive");
    return 0.5 * x * x + 0.5 * p.g / (x * x);
}

inline double energy(const ModelParams& p, unsigned n) {
    return 2.0 * static_cast<double>(n) + p.s + 1.5;
}

/// Coefficients b_n, c_n and energies E_n generated by iterating the
/// hierarchy recurrences from the n = 0 matching conditions.
struct FactorizationChain {
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> E;

    std::size_t depth() const { return E.size(); }
};

/// Both roots b0 = -1 and b0 = +1 of b0^2 = 1 and the ground energies they give.
struct GroundBranches {
    double b_selected = -1.0;
    double E_selected = 0.0;
    double b_rejected = 1.0;
    double E_rejected = 0.0;
};

inline GroundBranches ground_branches(const ModelParams& p) {
    // c0 (c0 - 1) = s(s+1): roots s+1 and -s; the normalizable root is s+1.
    const double c0 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * p.g));
    // b0 (2 c0 + 1) + 2 E0 = 0
    const auto e0 = [&](double b0) { return -0.5 * b0 * (2.0 * c0 + 1.0); };
    GroundBranches br;
    const double em = e0(-1.0);
    const double ep = e0(1.0);
    if (em >= ep) {
        br = {-1.0, em, 1.0, ep};
    } else {
        br = {1.0, ep, -1.0, em};
    }
    return br;
}

inline FactorizationChain build_factorization_chain(const ModelParams& p, std::size_t depth) {
    FactorizationChain ch;
    if (depth == 0) return ch;
    const auto ground = ground_branches(p);
    ch.b.push_back(ground.b_selected);
    ch.c.push_back(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * p.g)));
    ch.E.push_back(ground.E_selected);
    for (std::size_t n = 0; n + 1 < depth; ++n) {
        const double bn = ch.b[n];
        const double cn = ch.c[n];
        // b_{n+1}^2 = b_n^2, keeping the sign of b_0
        const double b_next = std::copysign(std::abs(bn), ground.b_selected);
        // c_{n+1}(c_{n+1} - 1) = c_n(c_n + 1): roots c_n + 1 and -c_n
        const double c_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * cn * (cn + 1.0)));
        // b_{n+1}(2c_{n+1} + 1) + 2E_{n+1} = b_n(2c_n - 1) + 2E_n
        const double e_next = 0.5 * (bn * (2.0 * cn - 1.0) + 2.0 * ch.E[n] - b_next * (2.0 * c_next + 1.0));
        ch.b.push_back(b_next);
        ch.c.push_back(c_next);
        ch.E.push_back(e_next);
    }
    return ch;
}

/// c_n of the hierarchy, s + n + 1.
inline double chain_coefficient(const ModelParams& p, unsigned n) {
    return p.s + static_cast<double>(n) + 1.0;
}

/// N_n = sqrt(2 Gamma(n+1) / Gamma(n+s+3/2)), evaluated in log space.
inline double normalization_constant(const ModelParams& p, unsigned n) {
    const double dn = static_cast<double>(n);
    return std::exp(0.5 * (std::numbers::ln2 + ln_gamma(dn + 1.0) - ln_gamma(dn + p.s + 1.5)));
}

/// psi_n(x) = N_n x^{s+1} e^{-x^2/2} L_n^{s+1/2}(x^2)
inline double eigenfunction_value(const ModelParams& p, unsigned n, double x) {
    if (x <= 0.0) return 0.0;
    const double dn = static_cast<double>(n);
    const double log_env = 0.5 * (std::numbers::ln2 + ln_gamma(dn + 1.0) - ln_gamma(dn + p.s + 1.5)) +
                           (p.s + 1.0) * std::log(x) - 0.5 * x * x;
    return std::exp(log_env) * laguerre_assoc(n, p.laguerre_alpha(), x * x);
}

/// Default grid for level n: (1e-2, 6 + sqrt(2 E_n)], 2000 graded nodes.
inline GridSpec default_grid(const ModelParams& p, unsigned n) {
    return GridSpec{1e-2, 6.0 + std::sqrt(2.0 * energy(p, n)), 2000, SpacingLaw::graded};
}

/// Throws AccuracyError unless the grid puts enough nodes per local wavelength
/// at energy E.
inline void require_resolution(std::span<const double> nodes, double E) {
    const double kh = max_spacing(nodes) * std::sqrt(2.0 * E);
    if (kh > 0.5) throw AccuracyError("grid too coarse for requested level", kh);
}

inline GridFunction eigenfunction(const ModelParams& p, unsigned n, const GridSpec& spec) {
    return sample(spec, [&](double x) { return eigenfunction_value(p, n, x); });
}

/// <psi_m | psi_n> by composite Gauss-Legendre on (0, X], X past the turning point.
inline double eigen_overlap(const ModelParams& p, unsigned m, unsigned n) {
    const double X = 8.0 + std::sqrt(2.0 * energy(p, std::max(m, n)));
    static const GaussLegendreRule rule = gauss_legendre(20);
    return integrate_composite(
        [&](double x) { return eigenfunction_value(p, m, x) * eigenfunction_value(p, n, x); }, 0.0, X,
        64, rule);
}

/// Unnormalized null state xi_n = x^{s+n+1} e^{-x^2/2} of a_n.
inline double null_state_value(const ModelParams& p, unsigned n, double x) {
    if (x <= 0.0) return 0.0;
    return std::exp(chain_coefficient(p, n) * std::log(x) - 0.5 * x * x);
}

inline GridFunction null_state(const ModelParams& p, unsigned n, const GridSpec& spec) {
    return sample(spec, [&](double x) { return null_state_value(p, n, x); });
}

/// Sup-norm of D_n^- xi_n over the interior, relative to sup|xi_n|.
inline double null_state_residual(const ModelParams& p, unsigned n, const GridSpec& spec) {
    const auto xi = null_state(p, n, spec);
    const DiffOperator d(xi.nodes);
    auto out = d.first(xi.values);
    const double c = chain_coefficient(p, n);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double x = xi.nodes[i];
        out[i] += (x - c / x) * xi.values[i];
    }
    return sup_norm(out, 2) / sup_norm(xi.values);
}

/// |c_n| = [(E_n - E_{n-1}) ... (E_n - E_0)]^{-1/2}
inline double chain_normalization(const ModelParams& p, unsigned n) {
    double prod = 1.0;
    for (unsigned k = 0; k < n; ++k) prod *= energy(p, n) - energy(p, k);
    return 1.0 / std::sqrt(prod);
}

/// psi_n built as c_n a_0^+ a_1^+ ... a_{n-1}^+ xi_n with every derivative
/// taken on the grid. xi_n is normalized analytically: ||xi_n||^2 = Gamma(s+n+3/2)/2.
inline GridFunction factorization_build(const ModelParams& p, unsigned n, const GridSpec& spec) {
    GridFunction phi = null_state(p, n, spec);
    require_resolution(phi.nodes, energy(p, n));
    const double xi_norm = std::exp(0.5 * (ln_gamma(p.s + static_cast<double>(n) + 1.5) - std::numbers::ln2));
    for (double& v : phi.values) v /= xi_norm;
    const DiffOperator d(phi.nodes);
    for (unsigned k = n; k-- > 0;) {
        const double c = chain_coefficient(p, k);
        auto next = d.first(phi.values);
        for (std::size_t i = 0; i < next.size(); ++i) {
            const double x = phi.nodes[i];
            next[i] = (next[i] + (c / x - x) * phi.values[i]) / std::numbers::sqrt2;
        }
        phi.values = std::move(next);
    }
    const double cn = chain_normalization(p, n);
    for (double& v : phi.values) v *= cn;
    return phi;
}

/// Relative interior L2 distance between a grid function and psi_n.
inline double relative_l2_to_eigenfunction(const ModelParams& p, unsigned n, const GridFunction& f,
                                           std::size_t margin) {
    std::vector<double> diff(f.size());
    std::vector<double> ref(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        ref[i] = eigenfunction_value(p, n, f.nodes[i]);
        diff[i] = f.values[i] - ref[i];
    }
    return interior_l2(f.nodes, diff, margin) / interior_l2(f.nodes, ref, margin);
}

/// Relative L2 error of the chain-built psi_n against the closed form,
/// excluding the rows touched by one-sided stencils.
inline double factorization_error(const ModelParams& p, unsigned n, const GridSpec& spec) {
    const auto built = factorization_build(p, n, spec);
    return relative_l2_to_eigenfunction(p, n, built, 2 * static_cast<std::size_t>(n) + 2);
}

/// sup |(-psi''/2 + V psi - E_n psi)| / sup|psi| on the interior.
inline double schrodinger_residual(const ModelParams& p, unsigned n, const GridSpec& spec) {
    const auto psi = eigenfunction(p, n, spec);
    const DiffOperator d(psi.nodes);
    const auto d2 = d.second(psi.values);
    const double E = energy(p, n);
    std::vector<double> r(psi.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = -0.5 * d2[i] + (potential(p, psi.nodes[i]) - E) * psi.values[i];
    return sup_norm(r, 2) / sup_norm(psi.values);
}

struct OperatorProductResidual {
    double dagger_first = 0.0; // a_n^+ a_n: composed first-order vs closed form
    double dagger_last = 0.0;  // a_n a_n^+
    double commutator = 0.0;   // [a_n, a_n^+] vs (1/2)(-2 b_n + 2 c_n / x^2)
};

/// Applies a_n^+ a_n and a_n a_n^+ to a probe as composed first-order grid
/// operators and compares with the closed-form second-order operators
///   a^+ a = (1/2)[p^2 + b^2 x^2 + b(2c + 1) + c(c - 1)/x^2]
///   a a^+ = (1/2)[p^2 + b^2 x^2 + b(2c - 1) + c(c + 1)/x^2].
inline OperatorProductResidual operator_product_check(const ModelParams& p, unsigned n,
                                                      const GridFunction& probe) {
    const double b = -1.0;
    const double c = chain_coefficient(p, n);
    const auto& x = probe.nodes;
    const DiffOperator d(x);
    const std::size_t sz = probe.size();

    // a^+ a = -(1/2) D^+ D^-,  a a^+ = -(1/2) D^- D^+
    const auto apply_minus = [&](const std::vector<double>& f) {
        auto out = d.first(f);
        for (std::size_t i = 0; i < sz; ++i) out[i] += (-b * x[i] - c / x[i]) * f[i];
        return out;
    };
    const auto apply_plus = [&](const std::vector<double>& f) {
        auto out = d.first(f);
        for (std::size_t i = 0; i < sz; ++i) out[i] += (b * x[i] + c / x[i]) * f[i];
        return out;
    };
    auto dag_first = apply_plus(apply_minus(probe.values));
    auto dag_last = apply_minus(apply_plus(probe.values));
    for (std::size_t i = 0; i < sz; ++i) {
        dag_first[i] *= -0.5;
        dag_last[i] *= -0.5;
    }

    const auto f2 = d.second(probe.values);
    std::vector<double> ref_first(sz), ref_last(sz), ref_comm(sz), comm(sz);
    std::vector<double> e_first(sz), e_last(sz), e_comm(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        const double xi = x[i];
        const double f = probe.values[i];
        const double common = -f2[i] + b * b * xi * xi * f;
        ref_first[i] = 0.5 * (common + b * (2.0 * c + 1.0) * f + c * (c - 1.0) / (xi * xi) * f);
        ref_last[i] = 0.5 * (common + b * (2.0 * c - 1.0) * f + c * (c + 1.0) / (xi * xi) * f);
        ref_comm[i] = 0.5 * (-2.0 * b + 2.0 * c / (xi * xi)) * f;
        comm[i] = dag_last[i] - dag_first[i];
        e_first[i] = dag_first[i] - ref_first[i];
        e_last[i] = dag_last[i] - ref_last[i];
        e_comm[i] = comm[i] - ref_comm[i];
    }
    const std::size_t margin = 4;
    const double probe_norm = interior_l2(x, probe.values, margin);
    const auto rel = [&](const std::vector<double>& err, const std::vector<double>& ref) {
        return interior_l2(x, err, margin) / std::max(interior_l2(x, ref, margin), probe_norm);
    };
    return {rel(e_first, ref_first), rel(e_last, ref_last), rel(e_comm, ref_comm)};
}

} // namespace pho
