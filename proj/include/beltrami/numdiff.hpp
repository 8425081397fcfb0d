#pragma once

#include <array>
#include <cstddef>
#include <utility>

// Central differences with Richardson extrapolation over successive step
// halvings. `levels` = 2 is the classic (h, h/2) pair giving O(h^4).
namespace beltrami::numdiff {

namespace detail {

template <class T, std::size_t N>
T richardson(std::array<T, N> table, int levels)
{
    double factor = 4.0;
    for (int k = 1; k < levels; ++k) {
        for (int j = levels - 1; j >= k; --j) {
            table[j] = table[j] + (table[j] - table[j - 1]) * (1.0 / (factor - 1.0));
        }
        factor *= 4.0;
    }
    return table[levels - 1];
}

inline constexpr int max_levels = 6;

} // namespace detail

template <class F>
auto first_derivative(F&& f, double x, double h, int levels = 2)
{
    using T = decltype(f(x));
    std::array<T, detail::max_levels> table{};
    double step = h;
    for (int j = 0; j < levels; ++j, step *= 0.5) {
        table[j] = (f(x + step) - f(x - step)) * (0.5 / step);
    }
    return detail::richardson(table, levels);
}

template <class F>
auto second_derivative(F&& f, double x, double h, int levels = 2)
{
    using T = decltype(f(x));
    std::array<T, detail::max_levels> table{};
    const T centre = f(x);
    double step = h;
    for (int j = 0; j < levels; ++j, step *= 0.5) {
        table[j] = (f(x + step) - centre * 2.0 + f(x - step)) * (1.0 / (step * step));
    }
    return detail::richardson(table, levels);
}

/// d^2 f / (dx dy) with the four-point cross stencil.
template <class F>
auto mixed_derivative(F&& f, double x, double y, double hx, double hy, int levels = 2)
{
    using T = decltype(f(x, y));
    std::array<T, detail::max_levels> table{};
    double sx = hx;
    double sy = hy;
    for (int j = 0; j < levels; ++j, sx *= 0.5, sy *= 0.5) {
        table[j] = (f(x + sx, y + sy) - f(x + sx, y - sy) - f(x - sx, y + sy) + f(x - sx, y - sy))
                   * (0.25 / (sx * sy));
    }
    return detail::richardson(table, levels);
}

} // namespace beltrami::numdiff
