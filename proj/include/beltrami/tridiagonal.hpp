#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "beltrami/errors.hpp"

namespace beltrami {

/// Real symmetric tridiagonal matrix; `off_diagonal[i]` couples i and i+1.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    std::size_t size() const noexcept { return diagonal.size(); }

    void apply(std::span<const double> x, std::span<double> y) const
    {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i) {
            double acc = diagonal[i] * x[i];
            if (i > 0) {
                acc += off_diagonal[i - 1] * x[i - 1];
            }
            if (i + 1 < n) {
                acc += off_diagonal[i] * x[i + 1];
            }
            y[i] = acc;
        }
    }

    double trace() const
    {
        double t = 0.0;
        for (double d : diagonal) {
            t += d;
        }
        return t;
    }
};

struct SpectralBounds {
    double lower = 0.0;
    double upper = 0.0;
};

inline SpectralBounds gershgorin_bounds(const TridiagonalOperator& op)
{
    const std::size_t n = op.size();
    SpectralBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) {
            r += std::abs(op.off_diagonal[i - 1]);
        }
        if (i + 1 < n) {
            r += std::abs(op.off_diagonal[i]);
        }
        b.lower = std::min(b.lower, op.diagonal[i] - r);
        b.upper = std::max(b.upper, op.diagonal[i] + r);
    }
    return b;
}

/// max(|lower|, |upper|) of the Gershgorin interval, an upper bound on ||T||_2.
inline double gershgorin_norm(const TridiagonalOperator& op)
{
    const auto b = gershgorin_bounds(op);
    return std::max(std::abs(b.lower), std::abs(b.upper));
}

/// Number of eigenvalues strictly below `lambda`, from the signs of the pivots
/// of the LDL^T factorization of T - lambda I.
inline std::size_t sturm_count(const TridiagonalOperator& op, double lambda)
{
    double max_e2 = 1.0;
    for (double e : op.off_diagonal) {
        max_e2 = std::max(max_e2, e * e);
    }
    const double pivmin = std::numeric_limits<double>::min() * max_e2;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < op.size(); ++i) {
        const double prev = q;
        q = op.diagonal[i] - lambda;
        if (i > 0) {
            const double e = op.off_diagonal[i - 1];
            q -= e * e / prev;
        }
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
    }
    return count;
}

namespace detail {

inline double bisection_width(double lo, double hi, double tol)
{
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
    return std::max(tol, floor);
}

} // namespace detail

/// Eigenvalue number `index` (0-based, ascending) by Sturm bisection.
inline double eigenvalue_by_index(const TridiagonalOperator& op, std::size_t index, double tol)
{
    if (index >= op.size()) {
        throw invalid_parameter("k", "eigenvalue index exceeds the matrix dimension");
    }
    const auto b = gershgorin_bounds(op);
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, gershgorin_norm(op));
    double lo = b.lower - pad;
    double hi = b.upper + pad;
    while (hi - lo > detail::bisection_width(lo, hi, tol)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (sturm_count(op, mid) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// The k lowest eigenvalues, each bracketed to `tol`.
inline std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k, double tol)
{
    if (!(tol > 0.0)) {
        throw invalid_parameter("tol", "must be positive");
    }
    if (k > op.size()) {
        throw invalid_parameter("k", "requested " + std::to_string(k) + " eigenvalues of a "
                                         + std::to_string(op.size()) + "-dimensional operator");
    }
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        out[j] = eigenvalue_by_index(op, j, tol);
    }
    // bisection of neighbouring indices can return the same bracket midpoint
    // in the opposite order by one ulp; keep the list sorted
    std::sort(out.begin(), out.end());
    return out;
}

/// Eigenvalues inside [lo, hi), capped at `max_count` (lowest first).
inline std::vector<double> eigenvalues_in_range(const TridiagonalOperator& op, double lo, double hi, double tol,
                                                std::size_t max_count = std::numeric_limits<std::size_t>::max())
{
    const std::size_t first = sturm_count(op, lo);
    const std::size_t below_hi = std::max(sturm_count(op, hi), first);
    const std::size_t last = first + std::min(below_hi - first, max_count);
    std::vector<double> out;
    out.reserve(last > first ? last - first : 0);
    for (std::size_t j = first; j < last; ++j) {
        out.push_back(eigenvalue_by_index(op, j, tol));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// General tridiagonal LU with partial pivoting, shared with the
// non-symmetric cross-check.

class TridiagonalLU {
public:
    /// Factorizes the matrix with sub-diagonal `sub`, diagonal `diag - shift`
    /// and super-diagonal `sup`. Exactly singular pivots are replaced by
    /// `eps * scale`, the usual inverse-iteration safeguard.
    TridiagonalLU(std::span<const double> sub, std::span<const double> diag, std::span<const double> sup,
                  double shift, double scale)
    {
        const std::size_t n = diag.size();
        d_.assign(diag.begin(), diag.end());
        for (double& v : d_) {
            v -= shift;
        }
        dl_.assign(sub.begin(), sub.end());
        du_.assign(sup.begin(), sup.end());
        du2_.assign(n > 2 ? n - 2 : 0, 0.0);
        pivot_.assign(n, false);
        const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (std::abs(d_[i]) < tiny) {
                    d_[i] = std::copysign(tiny, d_[i] == 0.0 ? 1.0 : d_[i]);
                }
                const double f = dl_[i] / d_[i];
                dl_[i] = f;
                d_[i + 1] -= f * du_[i];
            } else {
                pivot_[i] = true;
                const double f = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = f;
                const double tmp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = tmp - f * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -f * du_[i + 1];
                }
            }
        }
        if (n > 0 && std::abs(d_[n - 1]) < tiny) {
            d_[n - 1] = std::copysign(tiny, d_[n - 1] == 0.0 ? 1.0 : d_[n - 1]);
        }
    }

    void solve(std::span<double> b) const
    {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (pivot_[i]) {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl_[i] * b[i + 1];
            } else {
                b[i + 1] -= dl_[i] * b[i];
            }
        }
        for (std::size_t k = n; k-- > 0;) {
            double acc = b[k];
            if (k + 1 < n) {
                acc -= du_[k] * b[k + 1];
            }
            if (k + 2 < n) {
                acc -= du2_[k] * b[k + 2];
            }
            b[k] = acc / d_[k];
        }
    }

private:
    std::vector<double> d_, dl_, du_, du2_;
    std::vector<bool> pivot_;
};

/// Deterministic start vector: alternating signs with an irrational-rotation
/// modulation so it has no accidental symmetry.
inline std::vector<double> inverse_iteration_seed(std::size_t n)
{
    constexpr double golden = 0.6180339887498949;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = std::fmod(static_cast<double>(i) * golden, 1.0);
        v[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + frac);
    }
    return v;
}

struct EigenvectorOptions {
    int max_iterations = 8;
    double residual_tolerance = 1e-10; ///< relative to ||T|| ||v||
    double cell = 1.0;                 ///< normalize so that sum v_i^2 * cell = 1
};

inline double euclidean_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return std::sqrt(s);
}

/// ||(T - E) v|| / (||T||_Gershgorin ||v||).
inline double relative_residual(const TridiagonalOperator& op, double E, std::span<const double> v)
{
    std::vector<double> Av(v.size());
    op.apply(v, Av);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = Av[i] - E * v[i];
        s += r * r;
    }
    const double nv = euclidean_norm(v);
    return nv > 0.0 ? std::sqrt(s) / (std::max(gershgorin_norm(op), 1.0) * nv) : 0.0;
}

/// Inverse iteration at shift E. `against` holds already accepted vectors
/// (any normalization) of the same cluster; the result is kept orthogonal to them.
inline std::vector<double> eigenvector(const TridiagonalOperator& op, double E,
                                       std::span<const std::vector<double>> against = {},
                                       const EigenvectorOptions& opt = {})
{
    const std::size_t n = op.size();
    const double scale = gershgorin_norm(op);
    const TridiagonalLU lu(op.off_diagonal, op.diagonal, op.off_diagonal, E, scale);
    std::vector<double> v = inverse_iteration_seed(n);
    auto orthogonalize = [&](std::vector<double>& x) {
        for (const auto& q : against) {
            double qq = 0.0;
            double qx = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                qq += q[i] * q[i];
                qx += q[i] * x[i];
            }
            if (qq > 0.0) {
                const double f = qx / qq;
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] -= f * q[i];
                }
            }
        }
        const double nx = euclidean_norm(x);
        for (double& xi : x) {
            xi /= nx;
        }
    };
    orthogonalize(v);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opt.max_iterations; ++it) {
        lu.solve(v);
        orthogonalize(v);
        // a second pass of Gram-Schmidt keeps cluster vectors orthogonal to round-off
        orthogonalize(v);
        residual = relative_residual(op, E, v);
        if (it >= 1 && residual < opt.residual_tolerance) {
            break;
        }
    }
    if (!(residual < opt.residual_tolerance)) {
        throw convergence_failure("inverse iteration at E = " + std::to_string(E)
                                  + " stalled with relative residual " + std::to_string(residual));
    }
    // sign convention: the largest-magnitude component is positive
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(v[i]) > std::abs(v[imax])) {
            imax = i;
        }
    }
    const double f = (v[imax] < 0.0 ? -1.0 : 1.0) / std::sqrt(opt.cell);
    for (double& x : v) {
        x *= f;
    }
    return v;
}

} // namespace beltrami
