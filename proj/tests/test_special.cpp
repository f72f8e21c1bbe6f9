#include <cmath>
#include <random>

#include <doctest.h>

#include "vofrac/special.hpp"

using namespace vofrac;

namespace {
// Scaled complementary error function erfcx(x) = e^{x^2} erfc(x) for large
// x > 0, by the standard asymptotic series; used as an independent oracle for
// E_{1/2}(-x) = erfcx(x).
double erfcx_asymptotic(double x) {
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        term *= -(2.0 * k - 1.0) * inv2x2;
        if (std::fabs(term) > 1.0) break;
        sum += term;
    }
    return sum / (x * std::sqrt(M_PI));
}
}  // namespace

TEST_CASE("principal_power basics") {
    CHECK(std::abs(principal_power({1.0, 0.0}, {3.7, -2.1}) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(principal_power({0.0, 1.0}, 2.0) - cplx{-1.0, 0.0}) < 1e-15);
    CHECK(principal_power({2.0, 0.0}, {0.5, 0.0}).real() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(principal_power({0.0, 0.0}, 1.0), std::domain_error);
}

TEST_CASE("principal_power exponent additivity off the cut") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        cplx s{U(rng), U(rng)};
        if (s.real() < 0.1 && std::fabs(s.imag()) < 0.1) continue;
        const cplx w1{U(rng), U(rng)}, w2{U(rng), U(rng)};
        const cplx lhs = principal_power(s, w1 + w2);
        const cplx rhs = principal_power(s, w1) * principal_power(s, w2);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(lhs));
    }
}

TEST_CASE("branch_power basics") {
    CHECK(std::abs(branch_power({1.0, +1}, 1.0).value - cplx{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(branch_power({4.0, -1}, 0.5).value - cplx{0.0, -2.0}) < 1e-14);
    CHECK_THROWS_AS(branch_power({-1.0, +1}, 1.0), std::domain_error);
    CHECK_THROWS_AS(branch_power({1.0, 2}, 1.0), std::domain_error);
}

TEST_CASE("branch_power conjugate-branch symmetry") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    std::uniform_real_distribution<double> R(0.01, 50.0);
    for (int i = 0; i < 300; ++i) {
        const double rho = R(rng);
        const cplx w{U(rng), U(rng)};
        const cplx a = branch_power({rho, +1}, w).value;
        const cplx b = std::conj(branch_power({rho, -1}, std::conj(w)).value);
        CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
    }
}

TEST_CASE("branch_power saturation flag") {
    const auto r = branch_power({1e8, +1}, 100.0);
    CHECK(r.saturated);
    CHECK(std::isfinite(r.value.real()));
    const auto u = branch_power({1e8, +1}, -100.0);
    CHECK(u.underflow);
    CHECK(u.value == cplx{0.0, 0.0});
}

TEST_CASE("mittag_leffler interpolates exp and cos") {
    for (double z = -30.0; z <= 5.0; z += 0.5)
        CHECK(std::fabs(mittag_leffler({1.0, z}) - std::exp(z)) <= 1e-12);
    for (double t = 0.0; t <= 10.0; t += 0.25)
        CHECK(std::fabs(mittag_leffler({2.0, -t * t}) - std::cos(t)) <= 1e-12);
}

TEST_CASE("mittag_leffler half-order oracle") {
    // E_{1/2}(z) = e^{z^2} erfc(-z)
    CHECK(mittag_leffler({0.5, -1.0}) ==
          doctest::Approx(0.427583576155807).epsilon(1e-12));
    for (double x : {10.0, 100.0, 3162.0, 1e4})
        CHECK(mittag_leffler({0.5, -x}) ==
              doctest::Approx(erfcx_asymptotic(x)).epsilon(1e-9));
}

TEST_CASE("mittag_leffler deep negative arguments stay accurate") {
    CHECK(mittag_leffler({0.7, -10.0}) ==
          doctest::Approx(0.036173265542309153).epsilon(1e-11));
    // Reference values from a high-precision evaluation of the series.
    CHECK(mittag_leffler({1.9, -1e4}) ==
          doctest::Approx(-2.6558902021540285e-6).epsilon(1e-9));
    CHECK(mittag_leffler({1.3, -50.0}) ==
          doctest::Approx(-0.004798038492797232).epsilon(1e-9));
    CHECK(mittag_leffler({0.3, -1e4}) ==
          doctest::Approx(7.7033810249795533e-5).epsilon(1e-9));
    CHECK(mittag_leffler({0.85, -300.0}) ==
          doctest::Approx(0.00053849822522383164).epsilon(1e-9));
    CHECK(std::fabs(mittag_leffler({2.0, -1e4}) - std::cos(100.0)) < 1e-10);
}

TEST_CASE("mittag_leffler series/asymptotic crossover agreement") {
    const double a = detail::ml_taylor_ext(0.7, -10.0);
    const double b = detail::ml_asymptotic(0.7, -10.0);
    CHECK(std::fabs(a - b) <= 1e-8 * std::fabs(a));
}

TEST_CASE("mittag_leffler domain errors") {
    CHECK_THROWS_AS(mittag_leffler({0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({2.5, 1.0}), std::domain_error);
    CHECK_THROWS_AS(mittag_leffler({1.0, std::nan("")}), std::domain_error);
}

TEST_CASE("gamma_reciprocal") {
    CHECK(gamma_reciprocal(1.0) == 1.0);
    CHECK(gamma_reciprocal(0.0) == 0.0);
    CHECK(gamma_reciprocal(-3.0) == 0.0);
    CHECK(gamma_reciprocal(0.5) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
    // Gamma(-0.5) = -2 sqrt(pi)
    CHECK(gamma_reciprocal(-0.5) ==
          doctest::Approx(-1.0 / (2.0 * std::sqrt(M_PI))).epsilon(1e-13));
    CHECK(gamma_reciprocal(5.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}
