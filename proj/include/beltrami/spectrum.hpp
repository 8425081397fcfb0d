#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "beltrami/discretize.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/grid.hpp"
#include "beltrami/tridiagonal.hpp"

namespace beltrami {

enum class StateClass { bound, propagating, unclassified };

inline const char* to_string(StateClass c)
{
    switch (c) {
    case StateClass::bound: return "bound";
    case StateClass::propagating: return "propagating";
    default: return "unclassified";
    }
}

inline StateClass state_class_from_string(const std::string& s)
{
    if (s == "bound") {
        return StateClass::bound;
    }
    if (s == "propagating") {
        return StateClass::propagating;
    }
    return StateClass::unclassified;
}

/// Evidence behind one classification.
struct ClassificationDetail {
    StateClass state = StateClass::unclassified;
    double inner_probability = 0.0; ///< probability in |u| < u_max / 2
    double enlarged_overlap = 0.0;  ///< weight reproduced by the doubled domain inside the window
    std::size_t window_states = 0;  ///< enlarged eigenvalues inside the window

    bool operator==(const ClassificationDetail&) const = default;
};

struct Spectrum {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors; ///< sum_i v_i^2 h = 1
    std::vector<ClassificationDetail> classifications;

    std::size_t size() const noexcept { return eigenvalues.size(); }

    /// Delta_k = E_{k+1} - E_k
    std::vector<double> gaps() const
    {
        std::vector<double> g;
        for (std::size_t k = 0; k + 1 < eigenvalues.size(); ++k) {
            g.push_back(eigenvalues[k + 1] - eigenvalues[k]);
        }
        return g;
    }

    /// E_{2j+1} - E_{2j}
    std::vector<double> doublet_splittings() const
    {
        std::vector<double> s;
        for (std::size_t j = 0; 2 * j + 1 < eigenvalues.size(); ++j) {
            s.push_back(eigenvalues[2 * j + 1] - eigenvalues[2 * j]);
        }
        return s;
    }

    std::size_t bound_count() const
    {
        return static_cast<std::size_t>(std::count_if(classifications.begin(), classifications.end(),
                                                      [](const auto& c) { return c.state == StateClass::bound; }));
    }
};

struct SolveOptions {
    std::size_t k = 8;
    double tol = 1e-10;
    bool vectors = true;
};

namespace detail {

inline double cluster_gap(const TridiagonalOperator& op, double tol)
{
    return std::max(1e3 * tol, 1e-9 * std::max(gershgorin_norm(op), 1.0));
}

/// Rotates a degenerate pair on a mirrored grid into parity eigenvectors,
/// even partner first.
inline void parity_adapt(std::vector<double>& a, std::vector<double>& b, double cell)
{
    const std::size_t n = a.size();
    double aa = 0.0, ab = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        aa += a[i] * a[j];
        ab += a[i] * b[j];
        bb += b[i] * b[j];
    }
    // eigenvectors of [[aa, ab], [ab, bb]]; the +1 eigenvalue is the even one
    const double theta = 0.5 * std::atan2(2.0 * ab, aa - bb);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    std::vector<double> even(n), odd(n);
    for (std::size_t i = 0; i < n; ++i) {
        even[i] = c * a[i] + s * b[i];
        odd[i] = -s * a[i] + c * b[i];
    }
    double pe = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        pe += even[i] * even[n - 1 - i];
    }
    if (pe < 0.0) {
        std::swap(even, odd);
    }
    auto fix_sign = [&](std::vector<double>& v) {
        // positive on the u > 0 side, at the largest component there
        std::size_t imax = n / 2;
        for (std::size_t i = n / 2; i < n; ++i) {
            if (std::abs(v[i]) > std::abs(v[imax])) {
                imax = i;
            }
        }
        const double norm = euclidean_norm(v) * std::sqrt(cell);
        const double f = (v[imax] < 0.0 ? -1.0 : 1.0) / norm;
        for (double& x : v) {
            x *= f;
        }
    };
    fix_sign(even);
    fix_sign(odd);
    a = std::move(even);
    b = std::move(odd);
}

} // namespace detail

/// Eigenpairs with reorthogonalization inside clusters of (near) degenerate
/// eigenvalues. `cell` is the grid step used for the L2(du) normalization.
inline void attach_eigenvectors(Spectrum& spec, const TridiagonalOperator& op, double cell, double tol)
{
    const double gap = detail::cluster_gap(op, tol);
    spec.eigenvectors.clear();
    std::size_t cluster_start = 0;
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        if (j > 0 && spec.eigenvalues[j] - spec.eigenvalues[j - 1] > gap) {
            cluster_start = j;
        }
        std::span<const std::vector<double>> previous(spec.eigenvectors.data() + cluster_start,
                                                      j - cluster_start);
        EigenvectorOptions opt;
        opt.cell = cell;
        spec.eigenvectors.push_back(eigenvector(op, spec.eigenvalues[j], previous, opt));
    }
}

inline Spectrum solve(const RadialProblem& problem, const SolveOptions& opt = {})
{
    Spectrum spec;
    spec.eigenvalues = lowest_eigenvalues(problem.op, opt.k, opt.tol);
    spec.classifications.assign(spec.eigenvalues.size(), ClassificationDetail{});
    if (!opt.vectors) {
        return spec;
    }
    const double h = problem.grid.step();
    attach_eigenvectors(spec, problem.op, h, opt.tol);
    if (problem.grid.mirrored()) {
        const double gap = detail::cluster_gap(problem.op, opt.tol);
        for (std::size_t j = 0; j + 1 < spec.size();) {
            const bool pair = spec.eigenvalues[j + 1] - spec.eigenvalues[j] <= gap
                              && (j + 2 >= spec.size() || spec.eigenvalues[j + 2] - spec.eigenvalues[j + 1] > gap)
                              && (j == 0 || spec.eigenvalues[j] - spec.eigenvalues[j - 1] > gap);
            if (pair) {
                detail::parity_adapt(spec.eigenvectors[j], spec.eigenvectors[j + 1], h);
                j += 2;
            } else {
                ++j;
            }
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Bound / propagating classification.

struct ClassifyOptions {
    double inner_probability_min = 0.9;
    double shift_tolerance = 1e-3;    ///< window half-width relative to max(|E|, 1)
    double overlap_min = 0.5;
    std::size_t window_cap = 32;      ///< more enlarged states than this: a continuum
    double tol = 1e-10;
};

inline double inner_probability(std::span<const double> v, const RadialGrid& grid)
{
    double inner = 0.0;
    double total = 0.0;
    const double half = 0.5 * grid.u_max();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double p = v[i] * v[i];
        total += p;
        if (std::abs(grid[i]) < half) {
            inner += p;
        }
    }
    return total > 0.0 ? inner / total : 0.0;
}

/// A state is bound when (a) at least 90% of its probability sits in the inner
/// half of the domain and (b) the doubled domain reproduces it: its projection
/// onto the enlarged eigenvectors with eigenvalues within
/// 1e-3 max(|E|, 1) of E carries at least half of its weight.
inline ClassificationDetail classify_state(double E, std::span<const double> v, const RadialProblem& problem,
                                           const RadialProblem& enlarged, const ClassifyOptions& opt = {})
{
    ClassificationDetail d;
    d.inner_probability = inner_probability(v, problem.grid);
    const double window = opt.shift_tolerance * std::max(std::abs(E), 1.0);
    const std::size_t lo = sturm_count(enlarged.op, E - window);
    const std::size_t hi = sturm_count(enlarged.op, E + window);
    d.window_states = hi - lo;
    if (d.window_states > 0 && d.window_states <= opt.window_cap) {
        Spectrum local;
        for (std::size_t j = lo; j < hi; ++j) {
            local.eigenvalues.push_back(eigenvalue_by_index(enlarged.op, j, opt.tol));
        }
        const double h = problem.grid.step();
        // every vector in the window gets orthogonalized against the earlier ones
        local.eigenvectors.clear();
        for (std::size_t j = 0; j < local.eigenvalues.size(); ++j) {
            EigenvectorOptions eo;
            eo.cell = h;
            local.eigenvectors.push_back(eigenvector(enlarged.op, local.eigenvalues[j],
                                                     std::span<const std::vector<double>>(local.eigenvectors),
                                                     eo));
        }
        const std::size_t offset = problem.grid.embedding_offset();
        double vv = 0.0;
        for (double x : v) {
            vv += x * x * h;
        }
        double captured = 0.0;
        for (const auto& V : local.eigenvectors) {
            double proj = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                proj += v[i] * V[i + offset] * h;
            }
            captured += proj * proj;
        }
        d.enlarged_overlap = vv > 0.0 ? captured / vv : 0.0;
    }
    const bool bound = d.inner_probability >= opt.inner_probability_min && d.enlarged_overlap >= opt.overlap_min;
    d.state = bound ? StateClass::bound : StateClass::propagating;
    return d;
}

/// Classifies every state of `spec` against the same problem on a domain of
/// twice the half-width and identical step.
inline void classify(Spectrum& spec, const RadialProblem& problem, const ClassifyOptions& opt = {})
{
    if (spec.eigenvectors.size() != spec.eigenvalues.size()) {
        throw invalid_parameter("spectrum", "classification needs eigenvectors");
    }
    const RadialProblem enlarged = discretize(problem.ell, problem.params, problem.grid.enlarged(), problem.scheme);
    spec.classifications.resize(spec.size());
    for (std::size_t j = 0; j < spec.size(); ++j) {
        spec.classifications[j] = classify_state(spec.eigenvalues[j], spec.eigenvectors[j], problem, enlarged, opt);
    }
}

} // namespace beltrami
