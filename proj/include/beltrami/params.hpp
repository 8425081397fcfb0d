#pragma once

#include <cmath>

#include "beltrami/errors.hpp"

namespace beltrami {

/// Surface radius and physical constants shared by every formula.
struct SurfaceParams {
    double radius = 1.0;    ///< pseudosphere radius R at u = 0
    double hbar = 1.0;
    double mass_star = 1.0; ///< effective electron mass m*

    void validate() const
    {
        if (!(radius > 0.0) || !std::isfinite(radius)) {
            throw invalid_parameter("R", "radius must be positive and finite");
        }
        if (!(hbar > 0.0) || !std::isfinite(hbar)) {
            throw invalid_parameter("hbar", "must be positive and finite");
        }
        if (!(mass_star > 0.0) || !std::isfinite(mass_star)) {
            throw invalid_parameter("mass", "must be positive and finite");
        }
    }

    /// hbar^2 / (2 m*)
    double kinetic_scale() const noexcept { return hbar * hbar / (2.0 * mass_star); }

    bool operator==(const SurfaceParams&) const = default;
};

/// Orbital quantum number. Every model formula sees it only through ell^2.
struct OrbitalNumber {
    int value = 0;

    constexpr double squared() const noexcept { return static_cast<double>(value) * value; }
    constexpr bool operator==(const OrbitalNumber&) const = default;
};

} // namespace beltrami
