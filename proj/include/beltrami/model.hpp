#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "beltrami/errors.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/hyperbolic.hpp"
#include "beltrami/params.hpp"

namespace beltrami::model {

namespace detail {

inline void require_regular(double u, const char* what)
{
    if (u == 0.0) {
        throw singular_coordinate(std::string(what) + ": undefined at u = 0");
    }
}

/// Fourth-order central first and second derivatives of a callable.
template <class F>
std::pair<double, double> derivatives4(F&& f, double u, double h)
{
    const double fm2 = f(u - 2.0 * h);
    const double fm1 = f(u - h);
    const double f0 = f(u);
    const double fp1 = f(u + h);
    const double fp2 = f(u + 2.0 * h);
    const double d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    const double d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    return {d1, d2};
}

} // namespace detail

/// Geometric potential -(hbar^2 / 2m*)(H^2 - K) of the pseudosphere.
inline double dacosta_potential(double u, const SurfaceParams& p)
{
    detail::require_regular(u, "dacosta_potential");
    return -p.kinetic_scale() * geometry::curvature_excess(u, p);
}

struct LambdaCoefficients {
    double lambda1 = 0.0; ///< multiplies -(hbar^2/2m) psi''
    double lambda2 = 0.0; ///< multiplies psi'
    double lambda3 = 0.0; ///< multiplies psi
};

inline LambdaCoefficients lambda_coefficients(double u, OrbitalNumber ell, const SurfaceParams& p)
{
    detail::require_regular(u, "lambda_coefficients");
    const double R = p.radius;
    const double x = u / R;
    const double c = hyp::coth(x);
    const double eps = p.kinetic_scale();
    return {c * c, eps / R * c * c * c,
            eps / (4.0 * R * R) * hyp::cosh_sq(x) * (4.0 * ell.squared() - c * c)};
}

/// Potential of the Hermitian Schroedinger-like equation obtained with
/// psi = sqrt|cosh tanh| y:
///   (hbar^2 / 16 m R^2) [cosh(2u/R) + 1] [4 l^2 + 3 csch^4(u/R) - 1].
inline double effective_potential(double u, OrbitalNumber ell, const SurfaceParams& p)
{
    detail::require_regular(u, "effective_potential");
    const double R = p.radius;
    const double x = u / R;
    const double cs = hyp::csch(x);
    const double cs2 = cs * cs;
    // cosh(2x) + 1 = 2 cosh^2 x
    return p.kinetic_scale() / (4.0 * R * R) * hyp::cosh_sq(x)
           * (4.0 * ell.squared() + 3.0 * cs2 * cs2 - 1.0);
}

/// Choice of the factor s in y = s X that maps the Hermitian equation onto
/// the flux form -(hbar^2/2) (Lambda1/m* X')' + Vbar X = E X.
enum class Gauge {
    /// s = |coth(u/R)| = sqrt(Lambda1): removes the X' term exactly.
    self_adjoint,
    /// s = exp(coth^2(u/R) / 2) as originally proposed; leaves a first-order
    /// remainder and is kept for comparison.
    printed,
};

struct ScaleFactor {
    double log_s = 0.0;
    double ds_over_s = 0.0;
    double d2s_over_s = 0.0;
};

inline ScaleFactor scale_factor_s(double u, const SurfaceParams& p, Gauge gauge = Gauge::self_adjoint)
{
    detail::require_regular(u, "scale_factor_s");
    const double R = p.radius;
    const double x = u / R;
    const double c = hyp::coth(x);
    if (gauge == Gauge::printed) {
        const double c2m1 = c * c - 1.0;
        const double first = -c * c2m1 / R;
        return {0.5 * c * c, first, first * first + (3.0 * c * c - 1.0) * c2m1 / (R * R)};
    }
    const double cs = hyp::csch(x);
    // log|coth x| = log cosh - log|sinh|
    return {hyp::log_cosh(x) - hyp::log_abs_sinh(x), -2.0 * hyp::csch(2.0 * x) / R,
            2.0 * cs * cs / (R * R)};
}

/// Vbar_eff = V_eff - (hbar^2 / 2m*) Lambda1 s''/s.
inline double pdm_effective_potential(double u, OrbitalNumber ell, const SurfaceParams& p,
                                      Gauge gauge = Gauge::self_adjoint)
{
    detail::require_regular(u, "pdm_effective_potential");
    if (gauge == Gauge::self_adjoint) {
        // Closed form of the composition; avoids cancelling two large terms near u = 0.
        const double R = p.radius;
        const double x = u / R;
        const double cs = hyp::csch(x);
        const double cs2 = cs * cs;
        return p.kinetic_scale() / (4.0 * R * R) * hyp::cosh_sq(x)
               * (4.0 * ell.squared() - 1.0 - 5.0 * cs2 * cs2);
    }
    const auto lam = lambda_coefficients(u, ell, p);
    return effective_potential(u, ell, p)
           - p.kinetic_scale() * lam.lambda1 * scale_factor_s(u, p, gauge).d2s_over_s;
}

/// M(u) = m* / Lambda1 = m* tanh^2(u/R). Returns the limit 0 at u = 0.
inline double mass_profile(double u, const SurfaceParams& p)
{
    const double t = hyp::tanh(u / p.radius);
    return p.mass_star * t * t;
}

// ---------------------------------------------------------------------------
// Reconstruction X -> y -> psi.

struct ReconstructedState {
    std::vector<double> psi_logmag; ///< log|psi|, -inf where X vanishes
    std::vector<int> psi_sign;      ///< -1, 0 or +1
    std::vector<double> surface_density; ///< |psi|^2 sqrt(g)
    std::vector<bool> representable;     ///< exp(log|psi|) and the density fit in a double

    std::vector<double> psi() const
    {
        std::vector<double> out(psi_logmag.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = psi_sign[i] == 0 ? 0.0 : psi_sign[i] * std::exp(psi_logmag[i]);
        }
        return out;
    }
};

/// log of the total factor psi / X at u. Both half-lines use the positive branch.
inline double log_psi_over_x(double u, const SurfaceParams& p, Gauge gauge = Gauge::self_adjoint)
{
    // sqrt|cosh tanh| = sqrt|sinh|
    const double log_prefactor = 0.5 * hyp::log_abs_sinh(u / p.radius);
    return log_prefactor + scale_factor_s(u, p, gauge).log_s;
}

inline ReconstructedState reconstruct_wavefunction(std::span<const double> X, std::span<const double> nodes,
                                                   const SurfaceParams& p,
                                                   Gauge gauge = Gauge::self_adjoint)
{
    if (X.size() != nodes.size()) {
        throw invalid_parameter("X", "node values and grid differ in length");
    }
    constexpr double log_max = 709.0;
    ReconstructedState out;
    out.psi_logmag.resize(X.size());
    out.psi_sign.resize(X.size());
    out.surface_density.resize(X.size());
    out.representable.resize(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double u = nodes[i];
        detail::require_regular(u, "reconstruct_wavefunction");
        if (X[i] == 0.0) {
            out.psi_logmag[i] = -std::numeric_limits<double>::infinity();
            out.psi_sign[i] = 0;
            out.surface_density[i] = 0.0;
            out.representable[i] = true;
            continue;
        }
        const double logmag = std::log(std::abs(X[i])) + log_psi_over_x(u, p, gauge);
        const double log_density = 2.0 * logmag + std::log(geometry::sqrt_det_metric(u, p));
        out.psi_logmag[i] = logmag;
        out.psi_sign[i] = X[i] > 0.0 ? 1 : -1;
        const bool ok = logmag < log_max && log_density < log_max;
        out.representable[i] = ok;
        out.surface_density[i] = ok ? std::exp(log_density) : std::numeric_limits<double>::infinity();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Continuum-limit advisory.

struct ContinuumAdvisory {
    double min_parallel_radius = 0.0;
    double radius_in_bonds = 0.0;
    bool warning = false;
    std::string message;
};

inline constexpr double continuum_threshold_bonds = 20.0;

/// Smallest parallel radius R sech(u/R) over |u| <= domain_half_width, in
/// units of the lattice bond length. Advisory only.
inline ContinuumAdvisory continuum_limit_check(double domain_half_width, const SurfaceParams& p,
                                               double bond_length)
{
    if (!(bond_length > 0.0)) {
        throw invalid_parameter("bond_length", "must be positive");
    }
    ContinuumAdvisory out;
    out.min_parallel_radius = geometry::parallel_radius(std::abs(domain_half_width), p);
    out.radius_in_bonds = out.min_parallel_radius / bond_length;
    out.warning = out.radius_in_bonds < continuum_threshold_bonds;
    if (out.warning) {
        out.message = "parallel radius drops to " + std::to_string(out.radius_in_bonds)
                      + " bond lengths; the smooth-surface description is doubtful";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Radial equation residuals.

/// Options of the two residual assemblies. `lambda2_sign` exists so tests can
/// flip the first-order coefficient and watch the check fail.
struct ResidualOptions {
    double step = 1e-3;
    double lambda2_sign = 1.0;
};

/// (1/sqrt g) d/du (sqrt g g^{uu}) from finite differences of the metric.
inline double divergence_coefficient(double u, const SurfaceParams& p, double h)
{
    auto flux = [&](double v) { return geometry::sqrt_det_metric(v, p) / geometry::metric(v, p).g_uu; };
    return numdiff::first_derivative(flux, u, h) / geometry::sqrt_det_metric(u, p);
}

/// Applies the radial operator in coefficient form to psi at u, minus E psi.
template <class Psi>
double radial_operator_lambda_form(Psi&& psi, double u, double E, OrbitalNumber ell, const SurfaceParams& p,
                                   const ResidualOptions& opt = {})
{
    const auto lam = lambda_coefficients(u, ell, p);
    const auto [d1, d2] = detail::derivatives4(psi, u, opt.step);
    return -p.kinetic_scale() * lam.lambda1 * d2 + opt.lambda2_sign * lam.lambda2 * d1
           + (lam.lambda3 - E) * psi(u);
}

/// Same operator rebuilt from the Laplace-Beltrami divergence form: the flux
/// sqrt(g) g^{uu} psi' is differentiated numerically, the azimuthal term uses
/// g_phiphi, and V_dC is added separately.
template <class Psi>
double radial_operator_divergence_form(Psi&& psi, double u, double E, OrbitalNumber ell,
                                       const SurfaceParams& p, const ResidualOptions& opt = {})
{
    const double h = opt.step;
    auto flux = [&](double v) {
        const auto g = geometry::metric(v, p);
        const double dpsi = detail::derivatives4(psi, v, h).first;
        return geometry::sqrt_det_metric(v, p) / g.g_uu * dpsi;
    };
    const double laplacian = detail::derivatives4(flux, u, h).first / geometry::sqrt_det_metric(u, p);
    const auto g = geometry::metric(u, p);
    const double centrifugal = p.kinetic_scale() * ell.squared() / g.g_phiphi;
    return -p.kinetic_scale() * laplacian + (centrifugal + dacosta_potential(u, p) - E) * psi(u);
}

struct AssemblyMismatch {
    double absolute = 0.0; ///< discrete L2 norm of (a) - (b)
    double relative = 0.0; ///< relative to the L2 norm of (a)'s non-energy part
};

/// Discrete L2 mismatch between the two assemblies of the radial equation for
/// a callable psi on the given nodes (none may lie within 4 steps of u = 0).
template <class Psi>
AssemblyMismatch laplace_beltrami_residual(Psi&& psi, double E, OrbitalNumber ell, const SurfaceParams& p,
                                           std::span<const double> nodes, const ResidualOptions& opt = {})
{
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (const double u : nodes) {
        if (std::abs(u) < 4.0 * opt.step) {
            throw ill_conditioned("residual stencil reaches u = 0");
        }
        const double a = radial_operator_lambda_form(psi, u, E, ell, p, opt);
        const double b = radial_operator_divergence_form(psi, u, E, ell, p, opt);
        const double scale = std::abs(a + E * psi(u)) + std::abs(E * psi(u));
        diff2 += (a - b) * (a - b);
        ref2 += scale * scale;
    }
    AssemblyMismatch out;
    out.absolute = std::sqrt(diff2);
    out.relative = ref2 > 0.0 ? out.absolute / std::sqrt(ref2) : 0.0;
    return out;
}

/// How node values of a half-line function continue past u = 0.
enum class HalfLineLayout {
    staggered, ///< nodes (i + 1/2) h; the mirror images are nodes themselves
    nodal,     ///< nodes (i + 1) h; psi(0) = 0 sits between the mirror images
};

struct GridResidual {
    double relative = 0.0; ///< sqrt(g)-weighted L2 of the residual over that of E psi
    std::vector<double> pointwise;
};

/// Residual of the radial equation for node values psi_i = psi(u_i) on a
/// uniform positive half-line grid, using fourth-order differences. psi is
/// continued evenly through u = 0 and by zero past the last node.
inline GridResidual equation_residual(std::span<const double> psi, double h, HalfLineLayout layout, double E,
                                      OrbitalNumber ell, const SurfaceParams& p, const ResidualOptions& opt = {})
{
    const std::size_t m = psi.size();
    // extended[j + 2] is psi at u_0 + j h for j >= -2
    std::vector<double> ext(m + 4, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        ext[i + 2] = psi[i];
    }
    if (layout == HalfLineLayout::staggered) {
        ext[1] = m > 0 ? psi[0] : 0.0;
        ext[0] = m > 1 ? psi[1] : 0.0;
    } else {
        ext[1] = 0.0;
        ext[0] = m > 0 ? psi[0] : 0.0;
    }
    const double u0 = layout == HalfLineLayout::staggered ? 0.5 * h : h;
    GridResidual out;
    out.pointwise.resize(m);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double u = u0 + static_cast<double>(i) * h;
        const std::size_t j = i + 2;
        const double d1 = (-ext[j + 2] + 8.0 * ext[j + 1] - 8.0 * ext[j - 1] + ext[j - 2]) / (12.0 * h);
        const double d2 = (-ext[j + 2] + 16.0 * ext[j + 1] - 30.0 * ext[j] + 16.0 * ext[j - 1] - ext[j - 2])
                          / (12.0 * h * h);
        const auto lam = lambda_coefficients(u, ell, p);
        const double r = -p.kinetic_scale() * lam.lambda1 * d2 + opt.lambda2_sign * lam.lambda2 * d1
                         + (lam.lambda3 - E) * ext[j];
        const double w = geometry::sqrt_det_metric(u, p);
        out.pointwise[i] = r;
        num += w * r * r;
        den += w * E * E * ext[j] * ext[j];
    }
    out.relative = den > 0.0 ? std::sqrt(num / den) : 0.0;
    return out;
}

} // namespace beltrami::model
