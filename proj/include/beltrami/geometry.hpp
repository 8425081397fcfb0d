#pragma once

#include <cmath>
#include <numbers>

#include "beltrami/errors.hpp"
#include "beltrami/hyperbolic.hpp"
#include "beltrami/numdiff.hpp"
#include "beltrami/params.hpp"

namespace beltrami {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

namespace geometry {

namespace detail {

inline void require_regular(double u, const char* what)
{
    if (u == 0.0) {
        throw singular_coordinate(std::string(what) + ": u = 0 is the non-differentiable rim");
    }
}

} // namespace detail

/// Point of the tractrix surface of revolution at (u, phi).
inline Vec3 embed(double u, double phi, const SurfaceParams& p)
{
    const double R = p.radius;
    const double x = u / R;
    const double rho = R * hyp::sech(x);
    const double angle = std::remainder(phi, 2.0 * std::numbers::pi);
    return {rho * std::cos(angle), rho * std::sin(angle), u - R * hyp::tanh(x)};
}

/// Distance of the surface point from the symmetry axis, R sech(u/R).
inline double parallel_radius(double u, const SurfaceParams& p)
{
    return p.radius * hyp::sech(u / p.radius);
}

struct MetricComponents {
    double g_uu = 0.0;
    double g_phiphi = 0.0;
};

inline MetricComponents metric(double u, const SurfaceParams& p)
{
    detail::require_regular(u, "metric");
    const double x = u / p.radius;
    const double t = hyp::tanh(x);
    const double s = hyp::sech(x);
    return {t * t, p.radius * p.radius * s * s};
}

/// The three independent non-vanishing symbols; Gamma^phi_{phi u} equals
/// `phi_uphi`.
struct ChristoffelSymbols {
    double u_uu = 0.0;
    double u_phiphi = 0.0;
    double phi_uphi = 0.0;
};

inline ChristoffelSymbols christoffel(double u, const SurfaceParams& p)
{
    detail::require_regular(u, "christoffel");
    const double R = p.radius;
    const double x = u / R;
    const double c2 = hyp::csch(2.0 * x);
    return {2.0 * c2 / R, 2.0 * R * c2, -hyp::tanh(x) / R};
}

/// sqrt(det g) = R |tanh(u/R)| sech(u/R).
inline double sqrt_det_metric(double u, const SurfaceParams& p)
{
    const double x = u / p.radius;
    return p.radius * std::abs(hyp::tanh(x)) * hyp::sech(x);
}

inline double gaussian_curvature(const SurfaceParams& p) { return -1.0 / (p.radius * p.radius); }

/// Mean curvature for the normal r_u x r_phi. Principal curvatures are
/// -1/(R|sinh x|) along the meridian and |sinh x|/R along the parallel.
inline double mean_curvature(double u, const SurfaceParams& p)
{
    detail::require_regular(u, "mean_curvature");
    const double x = u / p.radius;
    if (std::abs(x) > hyp::asymptotic_cutoff) {
        return std::numeric_limits<double>::infinity();
    }
    const double sh = std::abs(std::sinh(x));
    return (sh - 1.0 / sh) / (2.0 * p.radius);
}

/// H^2 - K = cosh^2(x) coth^2(x) / (4 R^2), the combination entering V_dC.
inline double curvature_excess(double u, const SurfaceParams& p)
{
    detail::require_regular(u, "curvature_excess");
    const double x = u / p.radius;
    const double ct = hyp::coth(x);
    return hyp::cosh_sq(x) * ct * ct / (4.0 * p.radius * p.radius);
}

struct GeometryPoint {
    double u = 0.0;
    double g_uu = 0.0;
    double g_phiphi = 0.0;
    double gamma_u_uu = 0.0;
    double gamma_u_phiphi = 0.0;
    double gamma_phi_uphi = 0.0;
    double K = 0.0;
    double H = 0.0;
    double sqrt_g = 0.0;
};

inline GeometryPoint evaluate(double u, const SurfaceParams& p)
{
    const auto g = metric(u, p);
    const auto gamma = christoffel(u, p);
    return {u, g.g_uu, g.g_phiphi, gamma.u_uu, gamma.u_phiphi, gamma.phi_uphi,
            gaussian_curvature(p), mean_curvature(u, p), sqrt_det_metric(u, p)};
}

// ---------------------------------------------------------------------------
// Finite-difference oracle. Everything below is rebuilt from `embed` alone.

struct EmbeddingDerivatives {
    Vec3 r_u;
    Vec3 r_phi;
    Vec3 r_uu;
    Vec3 r_uphi;
    Vec3 r_phiphi;
};

/// Derivatives of the embedding at (u, phi = 0) by Richardson-extrapolated
/// central differences; `h` is the base step in both u and phi.
inline EmbeddingDerivatives embedding_derivatives(double u, const SurfaceParams& p, double h,
                                                  int levels = 2)
{
    detail::require_regular(u, "embedding_derivatives");
    if (std::abs(u) < 4.0 * h) {
        throw ill_conditioned("finite-difference stencil reaches the u = 0 rim (|u| < 4h)");
    }
    const double hphi = h / p.radius;
    auto along_u = [&](double v) { return embed(v, 0.0, p); };
    auto along_phi = [&](double a) { return embed(u, a, p); };
    auto both = [&](double v, double a) { return embed(v, a, p); };
    return {numdiff::first_derivative(along_u, u, h, levels),
            numdiff::first_derivative(along_phi, 0.0, hphi, levels),
            numdiff::second_derivative(along_u, u, h, levels),
            numdiff::mixed_derivative(both, u, 0.0, h, hphi, levels),
            numdiff::second_derivative(along_phi, 0.0, hphi, levels)};
}

struct FundamentalForms {
    double E = 0.0, F = 0.0, G = 0.0; ///< first
    double L = 0.0, M = 0.0, N = 0.0; ///< second, normal r_u x r_phi
};

inline FundamentalForms fundamental_forms(const EmbeddingDerivatives& d)
{
    const Vec3 n_raw = cross(d.r_u, d.r_phi);
    const Vec3 n = n_raw * (1.0 / norm(n_raw));
    return {dot(d.r_u, d.r_u),  dot(d.r_u, d.r_phi),  dot(d.r_phi, d.r_phi),
            dot(d.r_uu, n),     dot(d.r_uphi, n),     dot(d.r_phiphi, n)};
}

struct CurvatureEstimate {
    double H = 0.0;
    double K = 0.0;
};

/// Mean and Gaussian curvature from numerically differentiated fundamental
/// forms; independent of every closed form above.
inline CurvatureEstimate curvature_oracle(double u, const SurfaceParams& p, double h, int levels = 2)
{
    const auto f = fundamental_forms(embedding_derivatives(u, p, h, levels));
    const double det1 = f.E * f.G - f.F * f.F;
    return {(f.E * f.N - 2.0 * f.F * f.M + f.G * f.L) / (2.0 * det1),
            (f.L * f.N - f.M * f.M) / det1};
}

inline MetricComponents metric_oracle(double u, const SurfaceParams& p, double h, int levels = 2)
{
    const auto f = fundamental_forms(embedding_derivatives(u, p, h, levels));
    return {f.E, f.G};
}

/// Gamma^k_ij = g^{kl} <r_ij, r_l> for the (orthogonal) numerically
/// differentiated frame.
inline ChristoffelSymbols christoffel_oracle(double u, const SurfaceParams& p, double h,
                                             int levels = 2)
{
    const auto d = embedding_derivatives(u, p, h, levels);
    const double E = dot(d.r_u, d.r_u);
    const double G = dot(d.r_phi, d.r_phi);
    return {dot(d.r_uu, d.r_u) / E, dot(d.r_phiphi, d.r_u) / E, dot(d.r_uphi, d.r_phi) / G};
}

} // namespace geometry
} // namespace beltrami
