#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "pdem/specfun.hpp"

using boost::multiprecision::cpp_rational;

namespace {

// Exact sum over k of (-n)_k (b)_k / ((c)_k k!) x^k; doubles are exact rationals.
double exact_hyp2f1(int n, double b, double c, double x) {
    const cpp_rational B(b), C(c), X(x);
    cpp_rational term = 1, sum = 1;
    for (int k = 0; k < n; ++k) {
        term *= cpp_rational(k - n) * (B + k) * X / ((C + k) * (k + 1));
        sum += term;
    }
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("pochhammer small cases") {
    CHECK(pdem::pochhammer(3.0, 0) == 1.0);
    CHECK(pdem::pochhammer(3.0, 3) == 60.0);
    CHECK(pdem::pochhammer(0.5, 2) == 0.75);
    CHECK(pdem::pochhammer(-2.0, 3) == 0.0);
    CHECK(pdem::pochhammer(-2.0, 2) == 2.0);
    CHECK_THROWS_AS(pdem::pochhammer(1.0, -1), pdem::DomainError);
}

TEST_CASE("hyp2f1 pinned values") {
    CHECK(std::abs(pdem::hyp2f1_terminating(2, 4.0, 3.5, 1.0) + 1.0 / 63.0) <= 1e-14);
    CHECK(pdem::hyp2f1_terminating(0, 7.0, 2.0, 0.3) == 1.0);
    // 2F1(-1, b; c; x) = 1 - b x / c
    CHECK(pdem::hyp2f1_terminating(1, 2.0, 4.0, 0.5) == Catch::Approx(0.75).epsilon(1e-15));
    // Chu-Vandermonde at x = 1: (c - b)_n / (c)_n
    const double cv = pdem::pochhammer(5.5 - 2.25, 6) / pdem::pochhammer(5.5, 6);
    CHECK(pdem::hyp2f1_terminating(6, 2.25, 5.5, 1.0) == Catch::Approx(cv).epsilon(1e-14));
}

TEST_CASE("hyp2f1 against exact rational sums") {
    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<int> deg(0, 10);
    std::uniform_real_distribution<double> ub(-6.0, 12.0), uc(0.25, 12.0), ux(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const int n = deg(rng);
        const double b = ub(rng), c = uc(rng), x = ux(rng);
        const double exact = exact_hyp2f1(n, b, c, x);
        const double got = pdem::hyp2f1_terminating(n, b, c, x);
        worst = std::max(worst, std::abs(got - exact) / std::abs(exact));
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("plain summation loses digits under cancellation") {
    pdem::PolyEvalSettings plain;
    plain.summation = pdem::Summation::plain;
    const int n = 20;
    const double b = 25.5, c = 1.5, x = 0.9;
    const double exact = exact_hyp2f1(n, b, c, x);
    const double comp = pdem::hyp2f1_terminating(n, b, c, x);
    const double raw = pdem::hyp2f1_terminating(n, b, c, x, plain);
    CHECK(std::abs(comp - exact) <= 1e-13 * std::abs(exact));
    CHECK(std::abs(raw - exact) >= std::abs(comp - exact));
}

TEST_CASE("hyp2f1 argument errors") {
    CHECK_THROWS_AS(pdem::hyp2f1_terminating(-1, 1.0, 1.0, 0.5), pdem::DomainError);
    CHECK_THROWS_AS(pdem::hyp2f1_terminating(31, 1.0, 1.0, 0.5), pdem::DegreeError);
    CHECK_THROWS_AS(pdem::hyp2f1_terminating(3, 1.0, -1.0, 0.5), pdem::DomainError);
    pdem::PolyEvalSettings wide;
    wide.max_degree = 40;
    CHECK_NOTHROW(pdem::hyp2f1_terminating(31, 1.0, 1.0, 0.5, wide));
}
