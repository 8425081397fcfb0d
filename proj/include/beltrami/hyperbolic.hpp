#pragma once

#include <cmath>
#include <limits>
#include <numbers>

// Hyperbolic helpers of the reduced coordinate x = u / R. Beyond |x| > 350 the
// exponentials are replaced by their limits so nothing overflows silently.
namespace beltrami::hyp {

inline constexpr double asymptotic_cutoff = 350.0;

inline double sech(double x) noexcept
{
    if (std::abs(x) > asymptotic_cutoff) {
        return 0.0;
    }
    return 1.0 / std::cosh(x);
}

inline double tanh(double x) noexcept
{
    if (std::abs(x) > asymptotic_cutoff) {
        return std::copysign(1.0, x);
    }
    return std::tanh(x);
}

inline double coth(double x) noexcept { return 1.0 / hyp::tanh(x); }

inline double csch(double x) noexcept
{
    if (std::abs(x) > asymptotic_cutoff) {
        return std::copysign(0.0, x);
    }
    return 1.0 / std::sinh(x);
}

/// cosh^2, saturating to +inf instead of raising FP overflow far out.
inline double cosh_sq(double x) noexcept
{
    if (std::abs(x) > asymptotic_cutoff) {
        return std::numeric_limits<double>::infinity();
    }
    const double c = std::cosh(x);
    return c * c;
}

inline double log_cosh(double x) noexcept
{
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

/// log|sinh x|; -inf at x = 0.
inline double log_abs_sinh(double x) noexcept
{
    const double a = std::abs(x);
    if (a < 1.0) {
        return std::log(std::sinh(a));
    }
    return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2;
}

/// |cosh b - cosh a| in product form, accurate when a and b are close.
inline double cosh_difference(double a, double b) noexcept
{
    return std::abs(2.0 * std::sinh(0.5 * (a + b)) * std::sinh(0.5 * (b - a)));
}

} // namespace beltrami::hyp
