#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"

namespace pho {

/// Pseudoharmonic coupling in units hbar = m = omega = 1:
/// V(x) = x^2/2 + g/(2 x^2) with g = s(s+1).
struct ModelParams {
    double g = 2.0;
    double s = 1.0;

    static ModelParams from_s(double s) {
        if (!(s >= -0.5) || !std::isfinite(s))
            throw DomainError("ModelParams: s must be >= -1/2, got " + std::to_string(s));
        return ModelParams{s * (s + 1.0), s};
    }

    static ModelParams from_g(double g) {
        if (!(g >= -0.25) || !std::isfinite(g))
            throw DomainError("ModelParams: g must be >= -1/4, got " + std::to_string(g));
        return ModelParams{g, -0.5 + std::sqrt(g + 0.25)};
    }

    /// Laguerre order of the eigenfunctions, s + 1/2.
    double laguerre_alpha() const { return s + 0.5; }
    /// Bargmann-type weight s/2 + 3/4 (lowest eigenvalue of M0).
    double lowest_weight() const { return 0.5 * s + 0.75; }
};

} // namespace pho
