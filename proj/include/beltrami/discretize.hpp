#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "beltrami/errors.hpp"
#include "beltrami/grid.hpp"
#include "beltrami/hyperbolic.hpp"
#include "beltrami/model.hpp"
#include "beltrami/params.hpp"
#include "beltrami/tridiagonal.hpp"

namespace beltrami {

/// Where the Dirichlet conditions of a uniform grid sit.
struct DirichletLayout {
    double left_wall = 0.0;
    double right_wall = 0.0;
    /// Face between nodes i and i+1 that becomes a wall at its midpoint.
    std::optional<std::size_t> cut_face;
};

inline DirichletLayout default_layout(const RadialGrid& grid, bool cut_at_origin)
{
    DirichletLayout layout;
    if (grid.mode() == GridMode::staggered_full) {
        layout.left_wall = -grid.u_max();
        layout.right_wall = grid.u_max();
        if (cut_at_origin) {
            layout.cut_face = grid.size() / 2 - 1;
        }
    } else {
        layout.left_wall = 0.0;
        layout.right_wall = grid.u_max();
    }
    return layout;
}

/// Symmetric finite-volume form of
///     -pref (P psi')' + w V psi = E w psi
/// in the variable X = sqrt(w) psi. `face_average(a, b)` must return the
/// harmonic mean of P over [a, b]. Every off-diagonal entry is <= 0.
template <class FaceAverage, class Weight, class Potential>
TridiagonalOperator assemble_sturm_liouville(const std::vector<double>& nodes, double h, double pref,
                                             const DirichletLayout& layout, FaceAverage&& face_average,
                                             Weight&& weight, Potential&& potential)
{
    const std::size_t n = nodes.size();
    TridiagonalOperator op;
    op.diagonal.assign(n, 0.0);
    op.off_diagonal.assign(n > 0 ? n - 1 : 0, 0.0);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = weight(nodes[i]);
        if (!(w[i] > 0.0) || !std::isfinite(w[i])) {
            throw ill_conditioned("non-positive weight at node u = " + std::to_string(nodes[i]));
        }
    }
    auto wall_stiffness = [&](double wall, double node) {
        const double a = std::min(wall, node);
        const double b = std::max(wall, node);
        return pref * face_average(a, b) / (h * (b - a));
    };
    if (n > 0) {
        op.diagonal.front() += wall_stiffness(layout.left_wall, nodes.front());
        op.diagonal.back() += wall_stiffness(layout.right_wall, nodes.back());
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (layout.cut_face && *layout.cut_face == i) {
            const double mid = 0.5 * (nodes[i] + nodes[i + 1]);
            op.diagonal[i] += wall_stiffness(mid, nodes[i]);
            op.diagonal[i + 1] += wall_stiffness(mid, nodes[i + 1]);
            continue;
        }
        const double k = pref * face_average(nodes[i], nodes[i + 1]) / (h * h);
        op.diagonal[i] += k;
        op.diagonal[i + 1] += k;
        op.off_diagonal[i] = -k / std::sqrt(w[i] * w[i + 1]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double v = potential(nodes[i]);
        op.diagonal[i] = op.diagonal[i] / w[i] + v;
        if (!std::isfinite(op.diagonal[i])) {
            throw ill_conditioned("non-finite diagonal at node u = " + std::to_string(nodes[i]));
        }
    }
    return op;
}

/// Constant mass benchmark: -(hbar^2/2m) psi'' + V psi on the grid's own
/// Dirichlet layout, never cut at the origin.
template <class Potential>
TridiagonalOperator discretize_constant_mass(const RadialGrid& grid, const SurfaceParams& p, Potential&& V)
{
    return assemble_sturm_liouville(
        grid.nodes(), grid.step(), p.kinetic_scale(), default_layout(grid, false),
        [](double, double) { return 1.0; }, [](double) { return 1.0; }, V);
}

enum class PdmScheme {
    /// Divergence-form Laplace-Beltrami operator symmetrized by
    /// X = sqrt(sqrt(g)/R) psi, with exact cell-harmonic stiffness.
    self_adjoint_flux,
    /// Midpoint Lambda1/m* couplings plus Vbar_eff on the diagonal.
    nodal_potential,
};

inline const char* to_string(PdmScheme s)
{
    return s == PdmScheme::self_adjoint_flux ? "self-adjoint-flux" : "nodal-potential";
}

/// The assembled one-dimensional eigenproblem for one (R, l).
struct RadialProblem {
    RadialGrid grid;
    SurfaceParams params;
    OrbitalNumber ell;
    PdmScheme scheme = PdmScheme::self_adjoint_flux;
    TridiagonalOperator op;
};

namespace detail {

/// Harmonic mean of 1/|sinh(v/R)| over [a, b] (same sign, a < b).
inline double inverse_sinh_face_average(double a, double b, double R)
{
    const double dc = hyp::cosh_difference(a / R, b / R);
    return (b - a) / (R * dc);
}

} // namespace detail

/// The Beltrami radial operator. Its eigenvectors are the X of the flux form,
/// psi = cosh/sqrt|sinh| X. Staggered-full grids carry a Dirichlet face at u = 0.
inline RadialProblem discretize(OrbitalNumber ell, const SurfaceParams& p, const RadialGrid& grid,
                                PdmScheme scheme = PdmScheme::self_adjoint_flux)
{
    p.validate();
    const double R = p.radius;
    const auto layout = default_layout(grid, true);
    RadialProblem prob{grid, p, ell, scheme, {}};
    if (scheme == PdmScheme::self_adjoint_flux) {
        prob.op = assemble_sturm_liouville(
            grid.nodes(), grid.step(), p.kinetic_scale(), layout,
            [R](double a, double b) { return detail::inverse_sinh_face_average(a, b, R); },
            [R](double u) { return std::abs(hyp::tanh(u / R)) * hyp::sech(u / R); },
            [&](double u) { return model::lambda_coefficients(u, ell, p).lambda3; });
    } else {
        prob.op = assemble_sturm_liouville(
            grid.nodes(), grid.step(), p.kinetic_scale(), layout,
            [&](double a, double b) { return 1.0 / model::mass_profile(0.5 * (a + b), p) * p.mass_star; },
            [](double) { return 1.0; },
            [&](double u) { return model::pdm_effective_potential(u, ell, p); });
    }
    return prob;
}

} // namespace beltrami
