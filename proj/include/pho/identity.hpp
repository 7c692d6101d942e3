#pragma once

// Resolution-of-identity weights for both coherent-state families, checked
// in radial moment form: Int w~(x) x^n dx against the gamma-ratio moments.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"
#include "states.hpp"

namespace pho {

/// w_BG(x) = 0F1(s+3/2; x) / (pi Gamma(s+3/2)) * G^{4,0}_{2,4}(x | 0, s+1/2 ; 0, 0, s+1/2, s+1/2)
inline double weight_bg(const ModelParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("weight_bg: x must be positive");
    const double k = p.s + 1.5;
    return hyp0f1(k, x) / (std::numbers::pi * std::exp(ln_gamma(k))) *
           meijer_g(MeijerGSpec::coherent_bg(p.s), x);
}

/// pi w_BG(x) N_BG(x)^2, which reduces to G(x) / Gamma(s+3/2).
inline double weight_bg_tilde(const ModelParams& p, double x) {
    if (!(x > 0.0)) throw DomainError("weight_bg_tilde: x must be positive");
    return meijer_g(MeijerGSpec::coherent_bg(p.s), x) / std::exp(ln_gamma(p.s + 1.5));
}

/// w_GP(x) = Gamma(s+3/2) / (pi Gamma(s+1/2)) (1-x)^{-2} 2F1(0, 0; s+1/2; 1 - 1/x)
inline double weight_gp(const ModelParams& p, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("weight_gp: x must lie in (0, 1)");
    const double ratio = std::exp(ln_gamma(p.s + 1.5) - ln_gamma(p.s + 0.5));
    return ratio / std::numbers::pi / ((1.0 - x) * (1.0 - x)) * hyp2f1(0.0, 0.0, p.s + 0.5, 1.0 - 1.0 / x);
}

/// pi w_GP(x) N_GP(x)^2 with N_GP(x)^2 = (1-x)^{s+3/2}.
inline double weight_gp_tilde(const ModelParams& p, double x) {
    return std::numbers::pi * weight_gp(p, x) * std::pow(1.0 - x, p.s + 1.5);
}

/// Right-hand side of the radial moment equations.
inline double identity_moment(StateFamily f, const ModelParams& p, unsigned n) {
    const double dn = static_cast<double>(n);
    const double k = p.s + 1.5;
    if (f == StateFamily::barut_girardello)
        return std::exp(ln_gamma(dn + 1.0) + ln_gamma(dn + k) - ln_gamma(k));
    if (f == StateFamily::gilmore_perelomov)
        return std::exp(ln_gamma(dn + 1.0) + ln_gamma(k) - ln_gamma(dn + k));
    throw DomainError("identity_moment: family must be bg or gp");
}

struct MomentRow {
    unsigned n = 0;
    double quadrature = 0.0;
    double closed_form = 0.0;
    double rel_err = 0.0;
    std::size_t order = 0; // Gauss-Legendre nodes at convergence
};

struct MomentReport {
    StateFamily family = StateFamily::barut_girardello;
    double tolerance = 0.0;
    std::vector<MomentRow> rows;
    double max_rel_err = 0.0;
    bool passed = false;
};

inline double default_identity_tolerance(StateFamily f) {
    return f == StateFamily::barut_girardello ? 1e-4 : 1e-8;
}

/// Quadrature of one radial moment. Each n is integrated on its own.
inline AdaptiveResult identity_moment_quadrature(StateFamily f, const ModelParams& p, unsigned n, double tol) {
    const double dn = static_cast<double>(n);
    if (f == StateFamily::barut_girardello) {
        // x^n G(x) peaks near sqrt(x) = n + (s+1/2)/2 - 1/4
        const double root = dn + 0.5 * (p.s + 0.5) - 0.25;
        const double scale = std::max(1.0, root * root);
        const auto spec = MeijerGSpec::coherent_bg(p.s);
        const double inv_gamma = std::exp(-ln_gamma(p.s + 1.5));
        return integrate_doubling(
            [&](double x) { return meijer_g(spec, x) * inv_gamma * std::pow(x, dn); },
            DomainTransform::half_line, scale, 1e-2 * tol);
    }
    return integrate_doubling([&](double x) { return weight_gp_tilde(p, x) * std::pow(x, dn); },
                              DomainTransform::unit_right_edge, 1.0, 1e-2 * tol);
}

inline MomentReport verify_identity(StateFamily f, const ModelParams& p, unsigned n_max, double tol) {
    if (n_max > 12) throw DomainError("verify_identity: n_max must be <= 12");
    if (f == StateFamily::number) throw DomainError("verify_identity: family must be bg or gp");
    MomentReport rep;
    rep.family = f;
    rep.tolerance = tol;
    std::vector<double> residuals;
    bool converged = true;
    for (unsigned n = 0; n <= n_max; ++n) {
        const auto q = identity_moment_quadrature(f, p, n, tol);
        const double exact = identity_moment(f, p, n);
        MomentRow row{n, q.value, exact, std::abs(q.value - exact) / std::abs(exact), q.order};
        residuals.push_back(row.rel_err);
        converged = converged && q.converged;
        rep.max_rel_err = std::max(rep.max_rel_err, row.rel_err);
        rep.rows.push_back(row);
    }
    if (!converged)
        throw ConvergenceError("verify_identity: moment quadrature did not converge", rep.max_rel_err, residuals);
    rep.passed = rep.max_rel_err <= tol;
    return rep;
}

inline void write_moment_table(std::ostream& os, const MomentReport& rep) {
    os << "n,quadrature,closed_form,rel_err\n";
    for (const auto& r : rep.rows)
        os << r.n << ',' << format_number(r.quadrature) << ',' << format_number(r.closed_form) << ','
           << format_number(r.rel_err) << '\n';
}

} // namespace pho
