#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "beltrami/discretize.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/grid.hpp"
#include "beltrami/model.hpp"
#include "beltrami/spectrum.hpp"
#include "beltrami/tridiagonal.hpp"

namespace beltrami {

/// Non-symmetric tridiagonal matrix: row i reads sub[i-1], diag[i], sup[i].
struct GeneralTridiagonal {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;

    std::size_t size() const noexcept { return diag.size(); }

    void apply(const std::vector<double>& x, std::vector<double>& y) const
    {
        const std::size_t n = size();
        y.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = diag[i] * x[i];
            if (i > 0) {
                acc += sub[i - 1] * x[i - 1];
            }
            if (i + 1 < n) {
                acc += sup[i] * x[i + 1];
            }
            y[i] = acc;
        }
    }

    /// True when every sub[i] * sup[i] > 0, so a real diagonal similarity makes
    /// the matrix symmetric and the spectrum is real.
    bool symmetrizable() const
    {
        for (std::size_t i = 0; i < sub.size(); ++i) {
            if (!(sub[i] * sup[i] > 0.0)) {
                return false;
            }
        }
        return true;
    }

    /// The symmetric matrix similar to this one (requires symmetrizable()).
    TridiagonalOperator symmetrized() const
    {
        TridiagonalOperator op;
        op.diagonal = diag;
        op.off_diagonal.resize(sub.size());
        for (std::size_t i = 0; i < sub.size(); ++i) {
            op.off_diagonal[i] = -std::sqrt(sub[i] * sup[i]);
        }
        return op;
    }
};

/// Central-difference form of  -(hbar^2/2m) L1 psi'' + L2 psi' + L3 psi  on
/// the half-line grid with psi = 0 at both ends. `coeffs(u)` returns the Lambda triple.
template <class Coefficients>
GeneralTridiagonal discretize_direct(const RadialGrid& grid, const SurfaceParams& p, Coefficients&& coeffs)
{
    if (grid.mode() != GridMode::split_half) {
        throw invalid_parameter("mode", "the direct discretization runs on split-half grids");
    }
    const std::size_t n = grid.size();
    const double h = grid.step();
    const double eps = p.kinetic_scale();
    GeneralTridiagonal A;
    A.diag.resize(n);
    A.sub.resize(n - 1);
    A.sup.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const model::LambdaCoefficients c = coeffs(grid[i]);
        const double kin = eps * c.lambda1 / (h * h);
        const double drift = c.lambda2 / (2.0 * h);
        A.diag[i] = 2.0 * kin + c.lambda3;
        if (i > 0) {
            A.sub[i - 1] = -kin - drift;
        }
        if (i + 1 < n) {
            A.sup[i] = -kin + drift;
        }
    }
    return A;
}

inline GeneralTridiagonal discretize_direct(OrbitalNumber ell, const SurfaceParams& p, const RadialGrid& grid)
{
    return discretize_direct(grid, p, [&](double u) { return model::lambda_coefficients(u, ell, p); });
}

struct DirectEigenpair {
    double eigenvalue = 0.0;
    /// Zero once the real iteration settles (a complex pair cannot be reached
    /// by real arithmetic); otherwise the 2x2 Rayleigh-Ritz estimate on the
    /// last two iterates.
    double imaginary_part = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Shifted inverse power iteration for the non-symmetric matrix.
inline DirectEigenpair inverse_power(const GeneralTridiagonal& A, double shift, int max_iterations = 50,
                                     double tol = 1e-13)
{
    const std::size_t n = A.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(A.diag[i]) + (i > 0 ? std::abs(A.sub[i - 1]) : 0.0)
                                    + (i + 1 < n ? std::abs(A.sup[i]) : 0.0));
    }
    const TridiagonalLU lu(A.sub, A.diag, A.sup, shift, scale);
    std::vector<double> x = inverse_iteration_seed(n);
    double nx = euclidean_norm(x);
    for (double& v : x) {
        v /= nx;
    }
    std::vector<double> prev = x;
    DirectEigenpair out;
    double lambda = shift;
    for (int it = 1; it <= max_iterations; ++it) {
        std::vector<double> y = x;
        lu.solve(y);
        double xy = 0.0, xx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xy += x[i] * y[i];
            xx += x[i] * x[i];
        }
        const double next = shift + xx / xy;
        prev = x;
        const double ny = euclidean_norm(y);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = y[i] / ny;
        }
        out.iterations = it;
        const bool settled = std::abs(next - lambda) <= tol * std::max(std::abs(next), 1.0);
        lambda = next;
        if (settled && it >= 2) {
            out.converged = true;
            break;
        }
    }
    out.eigenvalue = lambda;
    if (out.converged) {
        return out;
    }

    // Rayleigh-Ritz on span{prev, x}: orthonormalize and project.
    std::vector<double> q1 = x;
    std::vector<double> q2 = prev;
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d += q1[i] * q2[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        q2[i] -= d * q1[i];
    }
    const double n2 = euclidean_norm(q2);
    if (n2 > 1e-8) {
        for (double& v : q2) {
            v /= n2;
        }
        std::vector<double> a1, a2;
        A.apply(q1, a1);
        A.apply(q2, a2);
        double b11 = 0.0, b12 = 0.0, b21 = 0.0, b22 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            b11 += q1[i] * a1[i];
            b12 += q1[i] * a2[i];
            b21 += q2[i] * a1[i];
            b22 += q2[i] * a2[i];
        }
        const double tr = b11 + b22;
        const double det = b11 * b22 - b12 * b21;
        const double disc = 0.25 * tr * tr - det;
        out.imaginary_part = disc < 0.0 ? std::sqrt(-disc) : 0.0;
    }
    return out;
}

struct NonHermitianCheck {
    std::vector<double> pdm_eigenvalues;
    std::vector<double> direct_eigenvalues;
    std::vector<double> relative_mismatch;
    double max_relative_mismatch = 0.0;
    double max_imaginary_part = 0.0;
    bool real_by_similarity = false; ///< all sub * sup products positive
    bool ordering_consistent = true; ///< direct eigenvalue j is the j-th of its matrix
    bool all_converged = true;
};

/// Eigenvalues of the direct (non-Hermitian) discretization versus the
/// flux-form ones on the same split-half grid.
inline NonHermitianCheck nonhermitian_cross_check(OrbitalNumber ell, const SurfaceParams& p, const RadialGrid& grid,
                                                  std::size_t k, double tol = 1e-10)
{
    const GeneralTridiagonal A = discretize_direct(ell, p, grid);
    const RadialProblem pdm = discretize(ell, p, grid);
    NonHermitianCheck out;
    out.pdm_eigenvalues = lowest_eigenvalues(pdm.op, k, tol);
    out.real_by_similarity = A.symmetrizable();
    std::optional<TridiagonalOperator> sym;
    if (out.real_by_similarity) {
        sym = A.symmetrized();
    }
    for (std::size_t j = 0; j < k; ++j) {
        const DirectEigenpair e = inverse_power(A, out.pdm_eigenvalues[j]);
        out.direct_eigenvalues.push_back(e.eigenvalue);
        out.all_converged = out.all_converged && e.converged;
        const double rel = std::abs(e.eigenvalue - out.pdm_eigenvalues[j]) / std::max(std::abs(e.eigenvalue), 1.0);
        out.relative_mismatch.push_back(rel);
        out.max_relative_mismatch = std::max(out.max_relative_mismatch, rel);
        out.max_imaginary_part = std::max(out.max_imaginary_part, e.imaginary_part);
        if (sym) {
            const double probe = 1e-8 * std::max(std::abs(e.eigenvalue), 1.0);
            if (sturm_count(*sym, e.eigenvalue - probe) != j || sturm_count(*sym, e.eigenvalue + probe) != j + 1) {
                out.ordering_consistent = false;
            }
        } else {
            out.ordering_consistent = false;
        }
    }
    return out;
}

} // namespace beltrami
