#include <cmath>

#include <doctest.h>

#include "vofrac/transition.hpp"

using namespace vofrac;

namespace {
const TransitionSpec kExp = TransitionSpec::exponential(0.6, 0.8, 2.0);
const TransitionSpec kML = TransitionSpec::mittag_leffler_kind(0.6, 0.8, 2.0, 0.7);
}

TEST_CASE("alpha_at closed forms") {
    CHECK(alpha_at(kExp, 0.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(alpha_at(TransitionSpec::constant(0.7), 5.0) == 0.7);
    CHECK(alpha_at(kExp, 1.0) == doctest::Approx(0.77293294335267746).epsilon(1e-14));
    CHECK(alpha_at(kML, 0.0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(alpha_at(kExp, -0.1), std::domain_error);
}

TEST_CASE("laplace_A closed forms and poles") {
    CHECK(laplace_A(TransitionSpec::constant(0.7), {2.0, 0.0}).real() ==
          doctest::Approx(0.35).epsilon(1e-15));
    CHECK(laplace_A(kExp, {1.0, 0.0}).real() ==
          doctest::Approx(0.7333333333333333).epsilon(1e-14));
    CHECK_THROWS_AS(laplace_A(kExp, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(laplace_A(kExp, {-2.0, 0.0}), std::domain_error);
}

TEST_CASE("s_times_A Tauberian endpoints") {
    CHECK(s_times_A(TransitionSpec::constant(0.7), cplx{3.0, 1.0}) == cplx{0.7, 0.0});
    CHECK(std::fabs(s_times_A(kExp, cplx{1e8, 0.0}).real() - 0.6) < 1e-7);
    CHECK(std::fabs(s_times_A(kExp, cplx{1e-8, 0.0}).real() - 0.8) < 1e-7);
    CHECK(std::fabs(s_times_A(kML, cplx{1e-12, 0.0}).real() - 0.8) < 1e-3);
    // s = 0 handled by the algebraic limit
    CHECK(s_times_A(kExp, cplx{0.0, 0.0}).real() == doctest::Approx(0.8));
}

TEST_CASE("cancelled-form consistency") {
    for (double x : {-5.0, -0.3, 0.4, 1.0, 7.0})
        for (double y : {-2.0, 0.5, 3.0}) {
            const cplx s{x, y};
            for (const auto& spec : {kExp, kML}) {
                const cplx a = s * laplace_A(spec, s);
                const cplx b = s_times_A(spec, s);
                CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
            }
        }
}

TEST_CASE("branch-point overload matches the limit onto the cut") {
    for (double rho : {0.3, 1.0, 5.0}) {
        const cplx above = s_times_A(kML, cplx{-rho, 1e-9});
        const cplx on = s_times_A(kML, BranchPoint{rho, +1});
        CHECK(std::abs(above - on) < 1e-6);
        // Exponential kind is rational: both branches coincide.
        CHECK(std::abs(s_times_A(kExp, BranchPoint{rho, +1}) -
                       s_times_A(kExp, BranchPoint{rho, -1})) < 1e-15);
    }
}

TEST_CASE("alpha range property") {
    for (const auto& spec : {kExp, kML}) {
        const double lo = std::min(spec.alpha1, spec.alpha2);
        const double hi = std::max(spec.alpha1, spec.alpha2);
        for (int i = 0; i <= 60; ++i) {
            const double t = std::pow(10.0, -4.0 + i * 0.15);
            const double a = alpha_at(spec, t);
            CHECK(a >= lo);
            CHECK(a <= hi);
        }
    }
}

TEST_CASE("degenerate exponential equals constant") {
    const auto deg = TransitionSpec::exponential(0.6, 0.6, 3.0);
    const auto con = TransitionSpec::constant(0.6);
    for (double t : {0.0, 0.5, 2.0, 20.0})
        CHECK(alpha_at(deg, t) == alpha_at(con, t));
    for (double x : {0.5, 1.0, 10.0})
        CHECK(std::abs(s_times_A(deg, cplx{x, 0.0}) - s_times_A(con, cplx{x, 0.0})) <= 1e-15);
}

TEST_CASE("validate") {
    CHECK(validate(kExp).pass);
    CHECK(validate(kML).pass);
    CHECK(validate(TransitionSpec::constant(0.5)).pass);
    const auto bad = validate(TransitionSpec::exponential(0.6, 1.2, 2.0));
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_violation.find("alpha2") != std::string::npos);
    CHECK_FALSE(validate(TransitionSpec::exponential(0.6, 0.8, -1.0)).pass);
    CHECK_FALSE(validate(TransitionSpec::mittag_leffler_kind(0.6, 0.8, 1.0, 1.5)).pass);
}
