#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <vector>

#include "pdem/diagnostics.hpp"
#include "pdem/jet.hpp"
#include "pdem/quadrature.hpp"
#include "pdem/tridiagonal.hpp"

using pdem::Interval;
using pdem::kPi;

TEST_CASE("jet carries first and second derivatives") {
    const auto x = pdem::Jet::variable(0.7);
    const auto y = pow(x * x + 1.0, 1.5) / x;
    // y = (x^2+1)^{3/2} / x
    const double v = std::pow(1.49, 1.5) / 0.7;
    const double d = 3.0 * std::sqrt(1.49) - std::pow(1.49, 1.5) / 0.49;
    CHECK(y.v == Catch::Approx(v).epsilon(1e-15));
    CHECK(y.d == Catch::Approx(d).epsilon(1e-14));
    const double h = 1e-4;
    auto f = [](double t) { return std::pow(t * t + 1.0, 1.5) / t; };
    const double dd = (f(0.7 + h) - 2 * f(0.7) + f(0.7 - h)) / (h * h);
    CHECK(y.dd == Catch::Approx(dd).epsilon(1e-6));
}

TEST_CASE("quadrature rules") {
    auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
    // integral over [0, 2] of e^{-x} cos 3x = [e^{-x}(3 sin 3x - cos 3x)/10]
    auto F = [](double x) { return std::exp(-x) * (3 * std::sin(3 * x) - std::cos(3 * x)) / 10.0; };
    const double exact = F(2.0) - F(0.0);
    CHECK(std::abs(pdem::integrate(f, {0.0, 2.0}) - exact) <= 1e-11);
    pdem::QuadratureSettings gl;
    gl.rule = pdem::QuadratureRule::gauss_legendre_composite;
    CHECK(std::abs(pdem::integrate(f, {0.0, 2.0}, gl) - exact) <= 1e-12);
    CHECK(pdem::integrate(f, {2.0, 0.0}) == Catch::Approx(-exact).epsilon(1e-10));
    CHECK_THROWS_AS(pdem::integrate(f, {0.0, pdem::kInf}), pdem::QuadratureError);
    CHECK_THROWS_AS(pdem::integrate([](double) { return NAN; }, {0.0, 1.0}), pdem::QuadratureError);

    pdem::QuadratureSettings loose;
    loose.tolerance = 1e-9;
    loose.max_refinements = 60;
    CHECK(pdem::integrate([](double x) { return std::sin(x) * std::sin(x); }, {0.0, kPi}, loose) ==
          Catch::Approx(kPi / 2).epsilon(1e-10));

    const auto& rule = pdem::gauss_legendre(5);
    double w = 0.0;
    for (double x : rule.weights) w += x;
    CHECK(w == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(pdem::gauss_integrate([](double x) { return std::pow(x, 9); }, 0.0, 1.0, rule) ==
          Catch::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("box spectrum matches the exact discrete eigenvalues") {
    const double L = 2.0;
    const pdem::Grid g(0.0, L, 199);
    const auto op = pdem::discretize_constant([](double) { return 0.0; }, g);
    const auto e = pdem::lowest_eigenvalues(op, 5);
    const double h = g.h();
    for (int k = 1; k <= 5; ++k) {
        const double exact = 4.0 / (h * h) * std::pow(std::sin(k * kPi * h / (2 * L)), 2);
        CHECK(e[k - 1] == Catch::Approx(exact).epsilon(1e-9));
    }
    CHECK(pdem::sturm_count(op, 0.5 * (e[2] + e[3])) == 3);
    CHECK(pdem::sturm_count(op, 0.0) == 0);
}

TEST_CASE("constant mass through the PDEM discretizations") {
    // m = 1/4 rescales the kinetic term by 4: eigenvalues 4 (k pi / L)^2
    const pdem::Grid g(0.0, 1.0, 399);
    auto m = [](auto) { return 0.25; };
    const auto cons = pdem::discretize_pdem(m, [](double) { return 0.0; }, g);
    const auto pe = pdem::lowest_eigenvalues(cons, 3);
    const pdem::Grid g2(0.0, 1.0, 799);
    const auto pe2 = pdem::lowest_eigenvalues(pdem::discretize_pdem(m, [](double) { return 0.0; }, g2), 3);
    for (int k = 0; k < 3; ++k) {
        const double exact = 4.0 * std::pow((k + 1) * kPi, 2);
        CHECK(std::abs(pe[k] - exact) / exact < 1e-4);
        CHECK(std::abs(pdem::richardson(pe[k], pe2[k]) - exact) / exact < 1e-9);
    }
    auto mj = [](auto z) { return z * 0.0 + 0.25; };
    const auto gauged = pdem::discretize_pdem_gauged(mj, [](auto) { return 0.0; }, g);
    const auto ge = pdem::lowest_eigenvalues(gauged, 3);
    for (int k = 0; k < 3; ++k) CHECK(ge[k] == Catch::Approx(pe[k]).epsilon(1e-9));
}

TEST_CASE("harmonic oscillator with Richardson") {
    auto U = [](double x) { return x * x; };
    auto solve = [&](int n) {
        return pdem::lowest_eigenvalues(pdem::discretize_constant(U, pdem::Grid(-10, 10, n)), 4);
    };
    const auto c = solve(1999), f = solve(3999);
    for (int k = 0; k < 4; ++k)
        CHECK(std::abs(pdem::richardson(c[k], f[k]) - (2 * k + 1)) < 1e-8);
}

TEST_CASE("eigenvectors, node counts and Gram defect") {
    const pdem::Grid g(0.0, kPi, 299);
    const auto op = pdem::discretize_constant([](double) { return 0.0; }, g);
    const auto e = pdem::lowest_eigenvalues(op, 4);
    for (int k = 0; k < 4; ++k) {
        const auto v = pdem::eigenvector(op, e[k]);
        CHECK(pdem::count_nodes(v) == k);
        double s = 0.0;
        for (double x : v) s += x * x * g.h();
        CHECK(s == Catch::Approx(1.0).epsilon(1e-12));
    }

    std::vector<std::function<double(double)>> states;
    for (int k = 1; k <= 3; ++k)
        states.emplace_back([k](double x) { return std::sqrt(2.0 / kPi) * std::sin(k * x); });
    CHECK(pdem::gram_defect(pdem::orthonormality_matrix(states, {0.0, kPi})) < 1e-10);

    const std::vector<double> flat{0.0, 1e-20, -1e-20, 1.0, 0.5, -0.5};
    CHECK(pdem::count_nodes(flat) == 1);
}

TEST_CASE("residual norms vanish on exact eigenfunctions") {
    const pdem::Grid g(0.0, kPi, 99);
    auto psi = [](double x) { return std::sin(2 * x); };
    CHECK(pdem::residual_norm_constant([](double) { return 0.0; }, psi, 4.0, g, {0.0, kPi}) < 1e-8);
    CHECK(pdem::residual_norm_constant([](double) { return 0.0; }, psi, 4.5, g, {0.0, kPi}) > 1e-2);

    // m = (1+z^2)^-2, U = -1: Psi = (1+z^2)^{-3/2} has E = 2 (checked with sympy)
    auto m = [](double z) { return 1.0 / std::pow(1 + z * z, 2); };
    auto p0 = [](double z) { return std::pow(1 + z * z, -1.5); };
    const pdem::Grid gz(-20, 20, 401);
    CHECK(pdem::residual_norm_pdem(m, [](double) { return -1.0; }, p0, 2.0, gz, {-25, 25}) < 1e-8);
}

TEST_CASE("grid and operator argument checks") {
    CHECK_THROWS_AS(pdem::Grid(1.0, 0.0, 100), pdem::DomainError);
    CHECK_THROWS_AS(pdem::Grid(0.0, 1.0, 3), pdem::DomainError);
    const pdem::Grid g(0.0, 1.0, 99);
    CHECK_THROWS_AS(pdem::discretize_constant([](double x) { return 1.0 / (x - x); }, g),
                    pdem::DomainError);
    CHECK_THROWS_AS(pdem::discretize_pdem([](double) { return 0.0; }, [](double) { return 0.0; }, g),
                    pdem::SingularError);
}
