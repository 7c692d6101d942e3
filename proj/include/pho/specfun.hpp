#pragma once

// Special-function kernel: gamma family, associated Laguerre polynomials,
// 0F1 / 2F1 series and the Mellin-Barnes evaluation of G^{q,0}_{p,q}.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "quadrature.hpp"

namespace pho {

/// ln Gamma(x) for x > 0.
inline double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

namespace detail {

inline constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

} // namespace detail

/// ln Gamma(z) for complex z (Lanczos, g = 7). The imaginary part is only
/// defined modulo 2 pi, which is all exp() needs.
inline std::complex<double> ln_gamma(std::complex<double> z) {
    using cd = std::complex<double>;
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
            throw DomainError("ln_gamma: pole at non-positive integer");
        return std::log(cd(pi)) - std::log(std::sin(pi * z)) - ln_gamma(cd(1.0) - z);
    }
    z -= 1.0;
    cd x = detail::lanczos_coeffs[0];
    for (std::size_t i = 1; i < detail::lanczos_coeffs.size(); ++i)
        x += detail::lanczos_coeffs[i] / (z + static_cast<double>(i));
    const cd t = z + 7.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// Digamma psi(x) for x > 0 (upward recurrence into the asymptotic series).
inline double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv2 * (1.0 / 12.0 -
                inv2 * (1.0 / 120.0 -
                        inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

/// L_n^alpha(x) by the three-term recurrence in n.
inline double laguerre_assoc(unsigned n, double alpha, double x) {
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (unsigned k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        const double next = ((2.0 * dk + 1.0 + alpha - x) * cur - (dk + alpha) * prev) / (dk + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// x dL_n^alpha/dx evaluated through the lowering and the raising recurrence.
struct LaguerreDerivative {
    double lowering = 0.0; // n L_n - (n + alpha) L_{n-1}
    double raising = 0.0;  // (n + 1) L_{n+1} - (n + alpha + 1 - x) L_n
};

inline LaguerreDerivative laguerre_derivative_identities(unsigned n, double alpha, double x) {
    const double dn = static_cast<double>(n);
    const double ln = laguerre_assoc(n, alpha, x);
    LaguerreDerivative d;
    d.lowering = n == 0 ? 0.0 : dn * ln - (dn + alpha) * laguerre_assoc(n - 1, alpha, x);
    d.raising = (dn + 1.0) * laguerre_assoc(n + 1, alpha, x) - (dn + alpha + 1.0 - x) * ln;
    return d;
}

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

inline constexpr std::size_t max_series_terms = 200000;

} // namespace detail

/// 0F1(; c; x) for x >= 0.
inline double hyp0f1(double c, double x) {
    if (detail::is_nonpositive_integer(c))
        throw DomainError("hyp0f1: lower parameter is a non-positive integer");
    if (x < 0.0) throw DomainError("hyp0f1: argument must be non-negative");
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t k = 0; k < detail::max_series_terms; ++k) {
        const double dk = static_cast<double>(k);
        term *= x / ((c + dk) * (dk + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
        if (!std::isfinite(sum)) throw DomainError("hyp0f1: overflow");
    }
    throw ConvergenceError("hyp0f1: series did not converge", std::abs(term / sum));
}

/// Gauss 2F1(a, b; c; w) by its power series. Terminates for a or b in
/// {0, -1, -2, ...}; otherwise requires |w| < 1.
inline double hyp2f1(double a, double b, double c, double w) {
    if (a == 0.0 || b == 0.0) return 1.0;
    if (detail::is_nonpositive_integer(c))
        throw DomainError("hyp2f1: lower parameter is a non-positive integer");
    const bool terminates = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
    if (!terminates && !(std::abs(w) < 1.0))
        throw DomainError("hyp2f1: |w| >= 1 with a non-terminating series");
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t k = 0; k < detail::max_series_terms; ++k) {
        const double dk = static_cast<double>(k);
        term *= (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * w;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum) && !terminates) return sum;
    }
    throw ConvergenceError("hyp2f1: series did not converge", std::abs(term / sum));
}

/// Parameters of G^{m,n}_{p,q}(x | a; b).
struct MeijerGSpec {
    unsigned m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;
    std::vector<double> b;

    /// G^{4,0}_{2,4}(x | 0, s+1/2 ; 0, 0, s+1/2, s+1/2)
    static MeijerGSpec coherent_bg(double s) {
        const double h = s + 0.5;
        return MeijerGSpec{4, 0, 2, 4, {0.0, h}, {0.0, 0.0, h, h}};
    }
};

struct MeijerGOptions {
    double rel_tol = 1e-10;       // panel-halving agreement
    double tail_cutoff = 1e-16;   // stop the contour once |integrand| < cutoff * peak
    unsigned max_refinements = 6;
};

namespace detail {

inline void validate(const MeijerGSpec& spec) {
    if (spec.a.size() != spec.p || spec.b.size() != spec.q)
        throw DomainError("meijer_g: parameter list lengths disagree with p, q");
    if (spec.m > spec.q || spec.n > spec.p)
        throw DomainError("meijer_g: require m <= q and n <= p");
    if (spec.n != 0 || spec.m != spec.q || spec.p >= spec.q)
        throw UnsupportedCase("meijer_g: only G^{q,0}_{p,q} with p < q is supported");
}

// Gamma(b_j + t) / Gamma(a_j + t) with equal parameters cancelled pairwise.
struct ReducedMellin {
    std::vector<double> num;
    std::vector<double> den;

    explicit ReducedMellin(const MeijerGSpec& spec) : num(spec.b) {
        for (double aj : spec.a) {
            auto it = std::find(num.begin(), num.end(), aj);
            if (it != num.end())
                num.erase(it);
            else
                den.push_back(aj);
        }
    }

    std::complex<double> ln(std::complex<double> t) const {
        std::complex<double> acc = 0.0;
        for (double bj : num) acc += ln_gamma(bj + t);
        for (double aj : den) acc -= ln_gamma(aj + t);
        return acc;
    }
};

inline double mellin_log_slope(const MeijerGSpec& spec, double c, double ln_x) {
    double acc = -ln_x;
    for (double bj : spec.b) acc += digamma(bj + c);
    for (double aj : spec.a) acc -= digamma(aj + c);
    return acc;
}

} // namespace detail

/// Real part of the contour abscissa used by meijer_g: the saddle of
/// |F(c) x^{-c}| on the real axis, kept at least 1/2 right of every pole.
inline double meijer_g_contour_abscissa(const MeijerGSpec& spec, double x) {
    detail::validate(spec);
    const double ln_x = std::log(x);
    double floor_c = 0.0;
    for (double bj : spec.b) floor_c = std::max(floor_c, -bj);
    floor_c += 0.5;
    for (double aj : spec.a)
        if (aj + floor_c <= 0.0) floor_c = -aj + 0.5;
    if (detail::mellin_log_slope(spec, floor_c, ln_x) >= 0.0) return floor_c;
    double hi = floor_c + 1.0;
    while (detail::mellin_log_slope(spec, hi, ln_x) < 0.0) hi = floor_c + 2.0 * (hi - floor_c);
    double lo = floor_c;
    for (int it = 0; it < 200 && hi - lo > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (detail::mellin_log_slope(spec, mid, ln_x) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// G^{q,0}_{p,q}(x) by the Mellin-Barnes integral
///   G(x) = (1/pi) Int_0^inf Re[ F(c + iy) x^{-c-iy} ] dy,
///   F(t) = prod_j Gamma(b_j + t) / prod_j Gamma(a_j + t),
/// on a vertical line through the real saddle, so that Int x^{k-1} G dx = F(k).
inline double meijer_g(const MeijerGSpec& spec, double x, const MeijerGOptions& opt = {}) {
    detail::validate(spec);
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("meijer_g: x must be positive");
    const double ln_x = std::log(x);
    const double c = meijer_g_contour_abscissa(spec, x);
    const detail::ReducedMellin mellin(spec);
    const double ln_peak = mellin.ln({c, 0.0}).real() - c * ln_x;
    if (ln_peak < -745.0) return 0.0;

    const auto integrand = [&](double y) {
        const std::complex<double> t(c, y);
        return std::exp(mellin.ln(t) - t * ln_x - ln_peak).real();
    };

    // Contour extent: march outward until the modulus drops below the cutoff.
    const double slope = std::abs(detail::mellin_log_slope(spec, c, ln_x));
    double width = 0.5 * std::max(1.0, std::sqrt(c) / 2.0);
    if (slope > 0.0) width = std::min(width, 2.0 / slope);
    std::size_t panels = 0;
    for (;; ++panels) {
        const double y = width * static_cast<double>(panels + 1);
        const std::complex<double> t(c, y);
        const double mod = std::exp((mellin.ln(t) - t * ln_x).real() - ln_peak);
        if (mod < opt.tail_cutoff) {
            ++panels;
            break;
        }
        if (panels > 100000)
            throw ConvergenceError("meijer_g: contour integrand does not decay", mod);
    }
    const double extent = width * static_cast<double>(panels);

    static const GaussLegendreRule rule = gauss_legendre(16);
    double coarse = integrate_composite(integrand, 0.0, extent, panels, rule);
    double residual = 0.0;
    for (unsigned r = 0; r < opt.max_refinements; ++r) {
        panels *= 2;
        const double fine = integrate_composite(integrand, 0.0, extent, panels, rule);
        residual = std::abs(fine - coarse);
        coarse = fine;
        if (residual <= opt.rel_tol * std::abs(fine) || residual == 0.0)
            return std::exp(ln_peak) * fine / std::numbers::pi;
    }
    throw ConvergenceError("meijer_g: contour quadrature did not converge",
                           residual / std::max(std::abs(coarse), 1e-300));
}

} // namespace pho
