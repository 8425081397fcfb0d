#include <cmath>
#include <numbers>
#include <vector>

#include "catch_amalgamated.hpp"

#include "beltrami/tridiagonal.hpp"

using namespace beltrami;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// -1, 2, -1 Laplacian of size n; eigenvalues 2 - 2 cos(k pi / (n + 1)).
TridiagonalOperator laplacian(std::size_t n)
{
    return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}

} // namespace

TEST_CASE("sturm count on a 2x2 operator", "[tridiagonal]")
{
    const TridiagonalOperator op{{0.0, 2.0}, {-1.0}};
    CHECK(sturm_count(op, 1.0) == 1);
    CHECK(sturm_count(op, 1.0 - std::sqrt(2.0) - 1e-12) == 0);
    CHECK(sturm_count(op, 1.0 + std::sqrt(2.0) + 1e-12) == 2);
    const auto ev = lowest_eigenvalues(op, 2, 1e-14);
    CHECK_THAT(ev[0], WithinAbs(1.0 - std::sqrt(2.0), 1e-13));
    CHECK_THAT(ev[1], WithinAbs(1.0 + std::sqrt(2.0), 1e-13));
}

TEST_CASE("sturm count is a monotone step function", "[tridiagonal]")
{
    const auto op = laplacian(50);
    const auto b = gershgorin_bounds(op);
    CHECK(sturm_count(op, b.lower - 1.0) == 0);
    CHECK(sturm_count(op, b.upper + 1.0) == 50);
    std::size_t prev = 0;
    for (int i = 0; i <= 400; ++i) {
        const std::size_t c = sturm_count(op, -0.5 + 5.0 * i / 400.0);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("zero couplings split the count", "[tridiagonal]")
{
    TridiagonalOperator op{{1.0, 1.0, 5.0, 5.0}, {-0.5, 0.0, -0.5}};
    CHECK(sturm_count(op, 0.0) == 0);
    CHECK(sturm_count(op, 3.0) == 2);
    CHECK(sturm_count(op, 10.0) == 4);
    // a zero pivot is perturbed, not fatal
    const TridiagonalOperator singular{{0.0, 0.0}, {1.0}};
    CHECK(sturm_count(singular, 0.0) == 1);
}

TEST_CASE("bisection reproduces the discrete Laplacian spectrum", "[tridiagonal]")
{
    const std::size_t n = 200;
    const auto op = laplacian(n);
    const auto ev = lowest_eigenvalues(op, 10, 1e-13);
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const double exact = 2.0 - 2.0 * std::cos(static_cast<double>(k + 1) * std::numbers::pi / (n + 1));
        CHECK_THAT(ev[k], WithinAbs(exact, 1e-12));
    }
}

TEST_CASE("full spectrum sums to the trace", "[tridiagonal]")
{
    TridiagonalOperator op;
    for (int i = 0; i < 60; ++i) {
        op.diagonal.push_back(std::sin(0.3 * i) * 4.0);
    }
    for (int i = 0; i < 59; ++i) {
        op.off_diagonal.push_back(-1.0 - 0.5 * std::cos(0.7 * i));
    }
    const double tol = 1e-12;
    const auto ev = lowest_eigenvalues(op, op.size(), tol);
    double sum = 0.0;
    for (double e : ev) {
        sum += e;
    }
    CHECK_THAT(sum, WithinAbs(op.trace(), 60 * tol * 10));
}

TEST_CASE("bisection is deterministic and validates its arguments", "[tridiagonal]")
{
    const auto op = laplacian(300);
    const auto a = lowest_eigenvalues(op, 7, 1e-10);
    const auto b = lowest_eigenvalues(op, 7, 1e-10);
    CHECK(a == b);
    CHECK_THROWS_AS(lowest_eigenvalues(op, 301, 1e-10), invalid_parameter);
    CHECK_THROWS_AS(lowest_eigenvalues(op, 2, 0.0), invalid_parameter);
    CHECK(lowest_eigenvalues(op, 0, 1e-10).empty());
}

TEST_CASE("eigenvalues in a range", "[tridiagonal]")
{
    const auto op = laplacian(100);
    const auto all = lowest_eigenvalues(op, 100, 1e-12);
    const auto some = eigenvalues_in_range(op, 1.0, 2.0, 1e-12);
    std::size_t expected = 0;
    for (double e : all) {
        expected += (e >= 1.0 && e < 2.0) ? 1 : 0;
    }
    CHECK(some.size() == expected);
    CHECK(eigenvalues_in_range(op, 1.0, 2.0, 1e-12, 3).size() == 3);
}

TEST_CASE("tridiagonal LU solves general systems", "[tridiagonal]")
{
    // row pivoting is exercised by a tiny leading diagonal
    const std::vector<double> sub{3.0, -1.0, 2.0, 0.5};
    const std::vector<double> diag{1e-9, 4.0, -2.0, 5.0, 1.0};
    const std::vector<double> sup{2.0, 1.0, 0.3, -4.0};
    const std::vector<double> x{1.0, -2.0, 0.5, 3.0, -1.0};
    std::vector<double> b(5, 0.0);
    for (std::size_t i = 0; i < 5; ++i) {
        b[i] = diag[i] * x[i] + (i > 0 ? sub[i - 1] * x[i - 1] : 0.0) + (i + 1 < 5 ? sup[i] * x[i + 1] : 0.0);
    }
    const TridiagonalLU lu(sub, diag, sup, 0.0, 5.0);
    lu.solve(b);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK_THAT(b[i], WithinAbs(x[i], 1e-12));
    }
}

TEST_CASE("inverse iteration", "[tridiagonal]")
{
    const std::size_t n = 400;
    const auto op = laplacian(n);
    const auto ev = lowest_eigenvalues(op, 3, 1e-14);
    std::vector<std::vector<double>> vecs;
    for (double e : ev) {
        vecs.push_back(eigenvector(op, e));
    }
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(relative_residual(op, ev[k], vecs[k]) < 1e-10);
        CHECK_THAT(euclidean_norm(vecs[k]), WithinRel(1.0, 1e-12));
        // k-th state has k sign changes
        int changes = 0;
        for (std::size_t i = 1; i < n; ++i) {
            changes += (vecs[k][i] * vecs[k][i - 1] < 0.0) ? 1 : 0;
        }
        CHECK(changes == static_cast<int>(k));
    }
    double dot01 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dot01 += vecs[0][i] * vecs[1][i];
    }
    CHECK(std::abs(dot01) < 1e-8);
    // deterministic bit for bit
    CHECK(eigenvector(op, ev[0]) == vecs[0]);

    EigenvectorOptions cell;
    cell.cell = 0.25;
    const auto scaled = eigenvector(op, ev[0], {}, cell);
    CHECK_THAT(euclidean_norm(scaled) * euclidean_norm(scaled) * 0.25, WithinRel(1.0, 1e-12));
}

TEST_CASE("inverse iteration inside an exactly degenerate pair", "[tridiagonal]")
{
    // two decoupled copies of the same block
    TridiagonalOperator op;
    const std::size_t m = 50;
    for (int copy = 0; copy < 2; ++copy) {
        for (std::size_t i = 0; i < m; ++i) {
            op.diagonal.push_back(2.0);
        }
    }
    op.off_diagonal.assign(2 * m - 1, -1.0);
    op.off_diagonal[m - 1] = 0.0;
    const auto ev = lowest_eigenvalues(op, 2, 1e-14);
    CHECK_THAT(ev[1] - ev[0], WithinAbs(0.0, 1e-13));
    const auto a = eigenvector(op, ev[0]);
    std::vector<std::vector<double>> prev{a};
    const auto b = eigenvector(op, ev[1], prev);
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] * b[i];
    }
    CHECK(std::abs(d) < 1e-10);
    CHECK(relative_residual(op, ev[1], b) < 1e-10);
}

TEST_CASE("a bad shift is reported", "[tridiagonal]")
{
    const auto op = laplacian(100);
    EigenvectorOptions opt;
    opt.max_iterations = 2;
    CHECK_THROWS_AS(eigenvector(op, 1.0 + 1e-3, {}, opt), convergence_failure);
}
