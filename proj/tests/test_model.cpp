#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "beltrami/geometry.hpp"
#include "beltrami/model.hpp"

using namespace beltrami;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const SurfaceParams unit{};

std::vector<double> random_points(int count, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-6.0, 6.0);
    std::vector<double> u;
    while (static_cast<int>(u.size()) < count) {
        const double x = d(rng);
        if (std::abs(x) > 1e-3) {
            u.push_back(x);
        }
    }
    return u;
}

} // namespace

TEST_CASE("da Costa potential", "[model]")
{
    CHECK_THAT(model::dacosta_potential(1.0, unit), WithinRel(-0.513144938313516, 1e-13));
    CHECK(model::dacosta_potential(-1.0, unit) == model::dacosta_potential(1.0, unit));
    CHECK(model::dacosta_potential(0.37, unit) < 0.0);
    CHECK_THROWS_AS(model::dacosta_potential(0.0, unit), singular_coordinate);

    // against the finite-difference curvatures
    const auto k = geometry::curvature_oracle(1.0, unit, 1e-2);
    CHECK_THAT(-unit.kinetic_scale() * (k.H * k.H - k.K), WithinRel(model::dacosta_potential(1.0, unit), 1e-8));
}

TEST_CASE("Lambda coefficients", "[model]")
{
    const auto l = model::lambda_coefficients(1.0, OrbitalNumber{0}, unit);
    CHECK_THAT(l.lambda1, WithinRel(1.724061660966310, 1e-14));
    CHECK_THAT(l.lambda2, WithinRel(1.131876897612675, 1e-13));
    CHECK_THAT(l.lambda3, WithinRel(-0.513144938313516, 1e-13));

    CHECK_THAT(model::lambda_coefficients(300.0, OrbitalNumber{0}, unit).lambda1, WithinAbs(1.0, 1e-15));

    const auto m = model::lambda_coefficients(-1.0, OrbitalNumber{3}, unit);
    const auto pl = model::lambda_coefficients(1.0, OrbitalNumber{3}, unit);
    CHECK(m.lambda1 == pl.lambda1);
    CHECK(m.lambda2 == -pl.lambda2);
    CHECK(m.lambda3 == pl.lambda3);
    CHECK(model::lambda_coefficients(1.0, OrbitalNumber{-3}, unit).lambda3 == pl.lambda3);
}

TEST_CASE("Lambda3 at l = 0 equals V_dC and M Lambda1 equals m*", "[model]")
{
    SurfaceParams p;
    p.radius = 2.5;
    p.hbar = 0.7;
    p.mass_star = 1.9;
    for (double u : random_points(1000, 7)) {
        const auto l = model::lambda_coefficients(u, OrbitalNumber{0}, p);
        CHECK_THAT(l.lambda3, WithinRel(model::dacosta_potential(u, p), 1e-15));
        CHECK_THAT(model::mass_profile(u, p) * l.lambda1, WithinRel(p.mass_star, 1e-15));
    }
}

TEST_CASE("divergence coefficient identity", "[model]")
{
    // (1/sqrt g) d/du (sqrt g g^{uu}) = -coth^3(u/R) / R
    for (double R : {1.0, 4.0}) {
        SurfaceParams p;
        p.radius = R;
        for (double x : {0.2, 0.9, 2.0, -1.3}) {
            const double u = x * R;
            const double c = 1.0 / std::tanh(x);
            CHECK_THAT(model::divergence_coefficient(u, p, 1e-4 * R), WithinRel(-c * c * c / R, 1e-8));
        }
    }
}

TEST_CASE("effective potential", "[model]")
{
    CHECK_THAT(model::effective_potential(1.0, OrbitalNumber{0}, unit), WithinRel(0.170485375500124, 1e-13));
    CHECK(model::effective_potential(1.0, OrbitalNumber{4}, unit)
          == model::effective_potential(1.0, OrbitalNumber{-4}, unit));
    CHECK(model::effective_potential(-2.0, OrbitalNumber{1}, unit)
          == model::effective_potential(2.0, OrbitalNumber{1}, unit));
    CHECK(model::effective_potential(30.0, OrbitalNumber{0}, unit) < -1e20);
    CHECK(model::effective_potential(30.0, OrbitalNumber{1}, unit) > 1e20);
    CHECK_THROWS_AS(model::effective_potential(0.0, OrbitalNumber{0}, unit), singular_coordinate);
}

TEST_CASE("scale factor of the printed gauge", "[model]")
{
    const auto s = model::scale_factor_s(1.0, unit, model::Gauge::printed);
    CHECK_THAT(s.log_s, WithinRel(0.862030830483155, 1e-14));
    CHECK_THAT(s.d2s_over_s, WithinRel(3.92478487331216, 1e-12));
    CHECK_THAT(model::scale_factor_s(0.1, unit, model::Gauge::printed).log_s, WithinRel(50.33366613830592, 1e-13));
    CHECK_THAT(model::scale_factor_s(40.0, unit, model::Gauge::printed).d2s_over_s, WithinAbs(0.0, 1e-30));
}

TEST_CASE("closed-form s''/s matches differences of log s", "[model]")
{
    for (const auto gauge : {model::Gauge::printed, model::Gauge::self_adjoint}) {
        for (double u : {0.4, 1.0, 2.5, -1.7}) {
            auto log_s = [&](double v) { return model::scale_factor_s(v, unit, gauge).log_s; };
            const double d1 = numdiff::first_derivative(log_s, u, 1e-3);
            const double d2 = numdiff::second_derivative(log_s, u, 1e-3);
            const auto s = model::scale_factor_s(u, unit, gauge);
            CHECK_THAT(s.ds_over_s, WithinRel(d1, 1e-8));
            CHECK_THAT(s.d2s_over_s, WithinRel(d2 + d1 * d1, 1e-7));
        }
    }
    CHECK_THAT(model::scale_factor_s(1.0, unit).d2s_over_s, WithinRel(1.448123321932621, 1e-13));
}

TEST_CASE("self-adjoint gauge removes the first-order term", "[model]")
{
    // Dividing -eps L1 (s X)'' by s leaves -eps L1 (X'' + 2 (s'/s) X' + ...), which is
    // the flux form -eps (L1 X')' exactly when s'/s = L1' / (2 L1).
    for (double u : {0.3, 1.0, 2.2}) {
        auto L1 = [&](double v) { return model::lambda_coefficients(v, OrbitalNumber{0}, unit).lambda1; };
        const double ratio = numdiff::first_derivative(L1, u, 1e-4) / (2.0 * L1(u));
        CHECK_THAT(model::scale_factor_s(u, unit).ds_over_s, WithinRel(ratio, 1e-8));
        CHECK(std::abs(model::scale_factor_s(u, unit, model::Gauge::printed).ds_over_s - ratio) > 1e-3);
    }
}

TEST_CASE("PDM effective potential", "[model]")
{
    CHECK_THAT(model::pdm_effective_potential(1.0, OrbitalNumber{0}, unit), WithinRel(-1.077841574347479, 1e-13));
    CHECK_THAT(model::pdm_effective_potential(1.0, OrbitalNumber{0}, unit, model::Gauge::printed),
               WithinRel(-3.21280018830888, 1e-12));

    // closed form equals the composition V_eff - eps L1 s''/s
    for (double u : {0.2, 1.0, 3.0}) {
        const double composed = model::effective_potential(u, OrbitalNumber{2}, unit)
                                - unit.kinetic_scale()
                                      * model::lambda_coefficients(u, OrbitalNumber{2}, unit).lambda1
                                      * model::scale_factor_s(u, unit).d2s_over_s;
        CHECK_THAT(model::pdm_effective_potential(u, OrbitalNumber{2}, unit), WithinRel(composed, 1e-12));
        CHECK(model::pdm_effective_potential(-u, OrbitalNumber{2}, unit)
              == model::pdm_effective_potential(u, OrbitalNumber{2}, unit));
    }

    // l shift: (hbar^2 / 4 m R^2) (cosh(2u/R) + 1) l^2, for both gauges
    for (const auto gauge : {model::Gauge::self_adjoint, model::Gauge::printed}) {
        for (double u : random_points(20, 11)) {
            const double shift = model::pdm_effective_potential(u, OrbitalNumber{3}, unit, gauge)
                                 - model::pdm_effective_potential(u, OrbitalNumber{0}, unit, gauge);
            const double expected = 0.25 * (std::cosh(2.0 * u) + 1.0) * 9.0;
            CHECK(shift >= 0.0);
            CHECK_THAT(shift, WithinRel(expected, 1e-9));
        }
    }
}

TEST_CASE("mass profile", "[model]")
{
    CHECK_THAT(model::mass_profile(1.0, unit), WithinRel(0.580025658385974, 1e-14));
    CHECK(model::mass_profile(0.0, unit) == 0.0);
    CHECK_THAT(model::mass_profile(10.5, unit), WithinAbs(1.0, 1e-6));
    CHECK(model::mass_profile(-2.0, unit) == model::mass_profile(2.0, unit));
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double m = model::mass_profile(0.1 * i, unit);
        CHECK(m > prev);
        CHECK(m <= 1.0);
        prev = m;
    }
}

TEST_CASE("wavefunction reconstruction", "[model]")
{
    const std::vector<double> nodes{-2.0, -0.5, 1e-4, 0.5, 2.0};
    const std::vector<double> zero(nodes.size(), 0.0);
    const auto z = model::reconstruct_wavefunction(zero, nodes, unit);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(z.psi_sign[i] == 0);
        CHECK(z.surface_density[i] == 0.0);
    }

    const std::vector<double> X{0.3, -0.2, 0.1, 0.2, 0.3};
    const auto r = model::reconstruct_wavefunction(X, nodes, unit);
    // psi = cosh / sqrt|sinh| X
    CHECK_THAT(r.psi()[3], WithinRel(std::cosh(0.5) / std::sqrt(std::sinh(0.5)) * 0.2, 1e-14));
    CHECK(r.psi_sign[1] == -1);
    CHECK(r.psi_logmag[0] == r.psi_logmag[4]); // |psi| even for even |X|
    CHECK_THAT(r.surface_density[4], WithinRel(r.psi()[4] * r.psi()[4] * geometry::sqrt_det_metric(2.0, unit), 1e-13));

    // the printed gauge explodes near the rim and is flagged, not thrown
    const auto pr = model::reconstruct_wavefunction(X, nodes, unit, model::Gauge::printed);
    CHECK_FALSE(pr.representable[2]);
    CHECK(pr.representable[4]);
    CHECK_THROWS_AS(model::reconstruct_wavefunction(std::vector<double>{1.0}, std::vector<double>{0.0}, unit),
                    singular_coordinate);
}

TEST_CASE("continuum-limit advisory", "[model]")
{
    SurfaceParams big;
    big.radius = 100.0;
    CHECK_FALSE(model::continuum_limit_check(100.0, big, 1.0).warning);
    SurfaceParams five;
    five.radius = 5.0;
    const auto w = model::continuum_limit_check(15.0, five, 1.0);
    CHECK(w.warning);
    CHECK_THAT(w.min_parallel_radius, WithinRel(5.0 / std::cosh(3.0), 1e-14));
    SurfaceParams r19;
    r19.radius = 19.0;
    CHECK(model::continuum_limit_check(0.0, r19, 1.0).warning);
    CHECK_FALSE(model::continuum_limit_check(0.0, SurfaceParams{20.0, 1.0, 1.0}, 1.0).warning);
    CHECK_THROWS_AS(model::continuum_limit_check(1.0, unit, 0.0), invalid_parameter);
}

TEST_CASE("two assemblies of the radial equation agree", "[model]")
{
    auto bump = [](double u) { return std::exp(-(u - 2.0) * (u - 2.0)); };
    std::vector<double> nodes;
    for (int i = 0; i < 100; ++i) {
        nodes.push_back(0.5 + 0.03 * i);
    }
    const auto m = model::laplace_beltrami_residual(bump, 2.0, OrbitalNumber{1}, unit, nodes);
    CHECK(m.relative < 1e-6);

    auto zero = [](double) { return 0.0; };
    CHECK(model::laplace_beltrami_residual(zero, 2.0, OrbitalNumber{1}, unit, nodes).absolute == 0.0);

    model::ResidualOptions flipped;
    flipped.lambda2_sign = -1.0;
    CHECK(model::laplace_beltrami_residual(bump, 2.0, OrbitalNumber{1}, unit, nodes, flipped).relative > 1e-2);

    CHECK_THROWS_AS(model::laplace_beltrami_residual(bump, 2.0, OrbitalNumber{1}, unit, std::vector<double>{1e-3}),
                    ill_conditioned);
}

TEST_CASE("grid residual of an exact solution shrinks at fourth order", "[model]")
{
    // psi = u^2 exp(-u^2) with analytic derivatives as the reference image
    auto psi = [](double u) { return u * u * std::exp(-u * u); };
    auto image = [](double u) {
        const double e = std::exp(-u * u);
        const double d1 = (2.0 * u - 2.0 * u * u * u) * e;
        const double d2 = (2.0 - 10.0 * u * u + 4.0 * u * u * u * u) * e;
        const auto l = model::lambda_coefficients(u, OrbitalNumber{2}, unit);
        return -unit.kinetic_scale() * l.lambda1 * d2 + l.lambda2 * d1 + l.lambda3 * u * u * e;
    };
    std::vector<double> err;
    for (double h : {0.02, 0.01}) {
        std::vector<double> values;
        const std::size_t m = static_cast<std::size_t>(std::llround(8.0 / h));
        for (std::size_t i = 0; i < m; ++i) {
            values.push_back(psi((static_cast<double>(i) + 0.5) * h));
        }
        const auto r = model::equation_residual(values, h, model::HalfLineLayout::staggered, 0.0, OrbitalNumber{2},
                                                unit);
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double u = (static_cast<double>(i) + 0.5) * h;
            if (u < 1.0 || u > 3.0) {
                continue;
            }
            const double exact = image(u);
            worst = std::max(worst, std::abs(r.pointwise[i] - exact) / std::abs(exact));
        }
        err.push_back(worst);
    }
    CHECK(err[1] < err[0] / 12.0);
    CHECK(err[1] < 1e-6);
}
