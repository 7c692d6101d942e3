#pragma once

// Barut-Girardello (eigenstates of M-) and Gilmore-Perelomov (displaced
// lowest-weight) coherent states as truncated coefficient vectors.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "algebra.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "specfun.hpp"

namespace pho {

enum class StateFamily { barut_girardello, gilmore_perelomov, number };

inline const char* to_string(StateFamily f) {
    switch (f) {
    case StateFamily::barut_girardello: return "bg";
    case StateFamily::gilmore_perelomov: return "gp";
    case StateFamily::number: return "number";
    }
    return "?";
}

/// Truncated expansion sum_n c_n |n>, n < D.
struct FockVector {
    std::vector<std::complex<double>> coeffs;
    ModelParams params;
    StateFamily label = StateFamily::number;
    std::complex<double> z = 0.0;
    double tail_bound = 0.0; // upper bound on the probability mass beyond D

    std::size_t dim() const { return coeffs.size(); }

    double norm_squared() const {
        double acc = 0.0;
        for (const auto& c : coeffs) acc += std::norm(c);
        return acc;
    }
};

inline FockVector number_state(const ModelParams& p, std::size_t n, std::size_t dim) {
    if (n >= dim) throw DomainError("number_state: n must be below the truncation");
    FockVector v{std::vector<std::complex<double>>(dim, 0.0), p, StateFamily::number, 0.0, 0.0};
    v.coeffs[n] = 1.0;
    return v;
}

struct StateTruncation {
    std::size_t dim = 128;
    double tail_threshold = 1e-12;
    double bg_cap = 100.0; // largest accepted |z| for Barut-Girardello states
};

/// Displacement parameter xi and the disk label z = (xi/|xi|) tanh|xi|.
struct GPParameter {
    std::complex<double> xi = 0.0;
    std::complex<double> z = 0.0;

    static GPParameter from_xi(std::complex<double> xi) {
        const double r = std::abs(xi);
        if (r == 0.0) return {xi, 0.0};
        return {xi, xi / r * std::tanh(r)};
    }
};

namespace detail {

inline double ln_bg_magnitude(const ModelParams& p, std::size_t n, double ln_r, double ln_norm) {
    const double dn = static_cast<double>(n);
    const double k = p.s + 1.5;
    return 0.5 * (ln_gamma(k) - ln_gamma(dn + 1.0) - ln_gamma(dn + k)) + dn * ln_r + ln_norm;
}

inline double ln_gp_magnitude(const ModelParams& p, std::size_t n, double ln_r, double ln_norm) {
    const double dn = static_cast<double>(n);
    const double k = p.s + 1.5;
    return 0.5 * (ln_gamma(dn + k) - ln_gamma(dn + 1.0) - ln_gamma(k)) + dn * ln_r + ln_norm;
}

// z^n / |z|^n, exact for real z
inline std::complex<double> unit_power(std::complex<double> z, std::size_t n) {
    if (z.imag() == 0.0) return (z.real() < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    return std::polar(1.0, static_cast<double>(n) * std::arg(z));
}

// successive-coefficient ratio |c_{n+1}|^2 / |c_n|^2
inline double mass_ratio(StateFamily f, const ModelParams& p, std::size_t n, double r2) {
    const double dn = static_cast<double>(n);
    if (f == StateFamily::barut_girardello) return r2 / ((dn + 1.0) * (dn + p.s + 1.5));
    return r2 * (dn + p.s + 1.5) / (dn + 1.0);
}

inline double ln_normalization(StateFamily f, const ModelParams& p, double r) {
    if (f == StateFamily::barut_girardello) return -0.5 * std::log(hyp0f1(p.s + 1.5, r * r));
    return p.lowest_weight() * std::log1p(-r * r);
}

inline double ln_magnitude(StateFamily f, const ModelParams& p, std::size_t n, double ln_r, double ln_norm) {
    return f == StateFamily::barut_girardello ? ln_bg_magnitude(p, n, ln_r, ln_norm)
                                              : ln_gp_magnitude(p, n, ln_r, ln_norm);
}

inline void check_family_domain(StateFamily f, double r, const StateTruncation& t) {
    if (f == StateFamily::gilmore_perelomov && !(r < 1.0))
        throw DomainError("gp_state: |z| must be < 1");
    if (f == StateFamily::barut_girardello && !(r <= t.bg_cap))
        throw DomainError("bg_state: |z| exceeds the configured cap");
}

} // namespace detail

/// Ratio-test bound on sum_{n >= D} |c_n|^2 for the analytic BG / GP coefficients.
inline double tail_mass_bound(StateFamily f, const ModelParams& p, double r, std::size_t dim) {
    if (r == 0.0) return 0.0;
    const double ratio = detail::mass_ratio(f, p, dim, r * r);
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    const double ln_norm = detail::ln_normalization(f, p, r);
    const double ln_c = detail::ln_magnitude(f, p, dim, std::log(r), ln_norm);
    return std::exp(2.0 * ln_c) / (1.0 - ratio);
}

/// Smallest D whose tail bound is below threshold.
inline std::size_t required_dimension(StateFamily f, const ModelParams& p, double r, double threshold) {
    if (f == StateFamily::gilmore_perelomov && !(r < 1.0))
        throw DomainError("required_dimension: gp needs |z| < 1");
    std::size_t D = 1;
    while (tail_mass_bound(f, p, r, D) > threshold) {
        if (++D > 10'000'000) throw TruncationError("required_dimension: no feasible D", D, 1.0);
    }
    return D;
}

namespace detail {

inline FockVector analytic_state(StateFamily f, const ModelParams& p, std::complex<double> z,
                                 const StateTruncation& t) {
    const double r = std::abs(z);
    check_family_domain(f, r, t);
    if (t.dim == 0) throw DomainError("state: truncation dimension must be positive");
    FockVector v{std::vector<std::complex<double>>(t.dim, 0.0), p, f, z, 0.0};
    if (r == 0.0) {
        v.coeffs[0] = 1.0;
        return v;
    }
    v.tail_bound = tail_mass_bound(f, p, r, t.dim);
    if (v.tail_bound > t.tail_threshold)
        throw TruncationError(std::string(to_string(f)) + "_state: truncation too small",
                              required_dimension(f, p, r, t.tail_threshold), v.tail_bound);
    const double ln_r = std::log(r);
    const double ln_norm = ln_normalization(f, p, r);
    for (std::size_t n = 0; n < t.dim; ++n)
        v.coeffs[n] = std::exp(ln_magnitude(f, p, n, ln_r, ln_norm)) * unit_power(z, n);
    return v;
}

} // namespace detail

/// c_n = N_BG [Gamma(s+3/2) / (n! Gamma(n+s+3/2))]^{1/2} z^n,  N_BG = 0F1(s+3/2; |z|^2)^{-1/2}
inline FockVector bg_state(const ModelParams& p, std::complex<double> z, const StateTruncation& t = {}) {
    return detail::analytic_state(StateFamily::barut_girardello, p, z, t);
}

/// c_n = N_GP [Gamma(n+s+3/2) / (n! Gamma(s+3/2))]^{1/2} z^n,  N_GP = (1 - |z|^2)^{s/2+3/4}
inline FockVector gp_state(const ModelParams& p, std::complex<double> z, const StateTruncation& t = {}) {
    return detail::analytic_state(StateFamily::gilmore_perelomov, p, z, t);
}

inline double bg_normalization(const ModelParams& p, double r) {
    return std::exp(detail::ln_normalization(StateFamily::barut_girardello, p, r));
}

inline double gp_normalization(const ModelParams& p, double r) {
    if (!(r < 1.0)) throw DomainError("gp_normalization: |z| must be < 1");
    return std::exp(detail::ln_normalization(StateFamily::gilmore_perelomov, p, r));
}

/// Solves m-(n+1) c_{n+1} = z c_n from c_0 = 1 and normalizes the truncated vector.
inline FockVector bg_recursion_solve(const ModelParams& p, std::complex<double> z,
                                     const StateTruncation& t = {}) {
    const double r = std::abs(z);
    detail::check_family_domain(StateFamily::barut_girardello, r, t);
    const double tail = tail_mass_bound(StateFamily::barut_girardello, p, r, t.dim);
    if (tail > t.tail_threshold)
        throw TruncationError("bg_recursion_solve: truncation too small",
                              required_dimension(StateFamily::barut_girardello, p, r, t.tail_threshold), tail);
    FockVector v{std::vector<std::complex<double>>(t.dim, 0.0), p, StateFamily::barut_girardello, z, tail};
    v.coeffs[0] = 1.0;
    for (std::size_t n = 0; n + 1 < t.dim; ++n) v.coeffs[n + 1] = z * v.coeffs[n] / m_minus(p, n + 1);
    const double norm = std::sqrt(v.norm_squared());
    for (auto& c : v.coeffs) c /= norm;
    return v;
}

/// || M- |z> - z |z> || with the truncated lowering matrix of the state's dimension.
inline double bg_eigen_residual(const FockVector& state) {
    const std::size_t D = state.dim();
    double acc = 0.0;
    for (std::size_t n = 0; n < D; ++n) {
        const std::complex<double> lowered = n + 1 < D ? m_minus(state.params, n + 1) * state.coeffs[n + 1] : 0.0;
        acc += std::norm(lowered - state.z * state.coeffs[n]);
    }
    return std::sqrt(acc);
}

/// exp(xi M+ - xi* M-)|0> from a dense matrix exponential of the truncated
/// generator. Throws TruncationError if more than leakage_threshold of the
/// amplitude reaches the last two basis states.
inline FockVector gp_displacement_oracle(const ModelParams& p, std::complex<double> xi, std::size_t dim,
                                         double leakage_threshold = 1e-8) {
    if (dim < 4) throw DomainError("gp_displacement_oracle: dimension must be >= 4");
    const auto gp = GPParameter::from_xi(xi);
    FockVector v{std::vector<std::complex<double>>(dim, 0.0), p, StateFamily::gilmore_perelomov, gp.z, 0.0};
    if (xi == 0.0) {
        v.coeffs[0] = 1.0;
        return v;
    }
    if (xi.imag() == 0.0) {
        Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t n = 0; n + 1 < dim; ++n) {
            const auto i = static_cast<Eigen::Index>(n);
            gen(i + 1, i) = xi.real() * m_plus(p, n);
            gen(i, i + 1) = -xi.real() * m_plus(p, n);
        }
        const Eigen::MatrixXd u = gen.exp();
        for (std::size_t n = 0; n < dim; ++n) v.coeffs[n] = u(static_cast<Eigen::Index>(n), 0);
    } else {
        Eigen::MatrixXcd gen =
            Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t n = 0; n + 1 < dim; ++n) {
            const auto i = static_cast<Eigen::Index>(n);
            gen(i + 1, i) = xi * m_plus(p, n);
            gen(i, i + 1) = -std::conj(xi) * m_plus(p, n);
        }
        const Eigen::MatrixXcd u = gen.exp();
        for (std::size_t n = 0; n < dim; ++n) v.coeffs[n] = u(static_cast<Eigen::Index>(n), 0);
    }
    const double leak = std::sqrt(std::norm(v.coeffs[dim - 1]) + std::norm(v.coeffs[dim - 2]));
    v.tail_bound = leak * leak;
    if (leak > leakage_threshold)
        throw TruncationError("gp_displacement_oracle: amplitude leaks to the truncation edge",
                              required_dimension(StateFamily::gilmore_perelomov, p, std::abs(gp.z),
                                                 leakage_threshold * leakage_threshold),
                              leak);
    return v;
}

} // namespace pho
