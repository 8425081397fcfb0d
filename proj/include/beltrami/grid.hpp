#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "beltrami/errors.hpp"

namespace beltrami {

enum class GridMode {
    /// Symmetric domain [-u_max, u_max]; u = 0 falls midway between two nodes.
    staggered_full,
    /// Positive half-line (0, u_max) with Dirichlet ends; the other half by mirror symmetry.
    split_half,
};

inline const char* to_string(GridMode mode)
{
    return mode == GridMode::staggered_full ? "staggered-full" : "split-half";
}

inline GridMode grid_mode_from_string(const std::string& s)
{
    if (s == "staggered-full") {
        return GridMode::staggered_full;
    }
    if (s == "split-half") {
        return GridMode::split_half;
    }
    throw invalid_parameter("mode", "expected staggered-full or split-half, got '" + s + "'");
}

class RadialGrid {
public:
    static constexpr std::size_t min_nodes = 64;

    RadialGrid(double u_max, std::size_t n, GridMode mode) : u_max_(u_max), n_(n), mode_(mode)
    {
        if (!(u_max > 0.0) || !std::isfinite(u_max)) {
            throw invalid_parameter("umax", "domain half-width must be positive and finite");
        }
        if (n < min_nodes) {
            throw invalid_parameter("n", "at least 64 nodes required");
        }
        if (mode == GridMode::staggered_full && n % 2 != 0) {
            throw invalid_parameter("n", "staggered-full grids need an even node count");
        }
        nodes_.resize(n);
        if (mode == GridMode::staggered_full) {
            h_ = 2.0 * u_max / static_cast<double>(n);
            // Built from the centre outward so u_{n-1-i} = -u_i bit for bit.
            const std::size_t half = n / 2;
            for (std::size_t i = 0; i < half; ++i) {
                const double u = (static_cast<double>(i) + 0.5) * h_;
                nodes_[half + i] = u;
                nodes_[half - 1 - i] = -u;
            }
        } else {
            h_ = u_max / static_cast<double>(n + 1);
            for (std::size_t i = 0; i < n; ++i) {
                nodes_[i] = static_cast<double>(i + 1) * h_;
            }
        }
    }

    double u_max() const noexcept { return u_max_; }
    std::size_t size() const noexcept { return n_; }
    GridMode mode() const noexcept { return mode_; }
    double step() const noexcept { return h_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const { return nodes_[i]; }

    /// True when node i and node size()-1-i are mirror images.
    bool mirrored() const noexcept { return mode_ == GridMode::staggered_full; }

    /// Positive half of the nodes and the index of the first one.
    std::size_t positive_begin() const noexcept { return mirrored() ? n_ / 2 : 0; }

    /// Same step, twice the half-width. `embedding_offset()` gives the index of
    /// this grid's first node inside the enlarged one.
    RadialGrid enlarged() const
    {
        if (mode_ == GridMode::staggered_full) {
            return RadialGrid(2.0 * u_max_, 2 * n_, mode_);
        }
        // keep h: 2 u_max / (m + 1) = u_max / (n + 1)
        return RadialGrid(2.0 * u_max_, 2 * n_ + 1, mode_);
    }

    std::size_t embedding_offset() const noexcept { return mode_ == GridMode::staggered_full ? n_ / 2 : 0; }

    bool operator==(const RadialGrid& o) const
    {
        return u_max_ == o.u_max_ && n_ == o.n_ && mode_ == o.mode_;
    }

private:
    double u_max_;
    std::size_t n_;
    GridMode mode_;
    double h_ = 0.0;
    std::vector<double> nodes_;
};

} // namespace beltrami
