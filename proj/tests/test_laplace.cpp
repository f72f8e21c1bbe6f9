#include <cmath>
#include <vector>

#include <doctest.h>

#include "vofrac/laplace.hpp"
#include "vofrac/transition.hpp"

using namespace vofrac;

TEST_CASE("talbot inverts elementary transforms") {
    TalbotConfig cfg;
    cfg.node_count = 32;
    auto one_over_s = [](qcplx s) { return qcplx{1, 0} / s; };
    auto one_over_s_plus_1 = [](qcplx s) { return qcplx{1, 0} / (s + qcplx{1, 0}); };
    for (double t : {0.5, 1.0, 4.0}) {
        CHECK(std::fabs(talbot_invert(one_over_s, t, cfg) - 1.0) < 1e-10);
        CHECK(std::fabs(talbot_invert(one_over_s_plus_1, t, cfg) - std::exp(-t)) < 1e-10);
    }
    CHECK_THROWS_AS(talbot_invert(one_over_s, 0.0, cfg), std::domain_error);
    CHECK_THROWS_AS(talbot_invert(one_over_s, -1.0, cfg), std::domain_error);
}

TEST_CASE("talbot constant-order relaxation transform") {
    // u_hat(s) = s^{alpha-1}/(s^alpha + 1), alpha = 0.6; u(1) = E_0.6(-1).
    auto F = [](qcplx s) {
        const qcplx sa = qexp(qreal(0.6) * qlog(s));
        return sa / s / (sa + qcplx{1, 0});
    };
    const double ref = 0.4133273409431063;  // E_{0.6}(-1)
    CHECK(std::fabs(talbot_invert(F, 1.0) - ref) < 1e-8);
}

TEST_CASE("talbot round trip over a time range") {
    for (double a : {0.5, 1.0, 3.0}) {
        auto F = [a](qcplx s) { return qcplx{1, 0} / (s + qcplx{qreal(a), 0}); };
        for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
            const double u = talbot_invert(F, t);
            const double ref = std::exp(-a * t);
            CHECK(std::fabs(u - ref) <= 1e-9 * std::max(ref, 1e-12));
        }
    }
}

TEST_CASE("talbot accuracy across node counts") {
    // u_hat for constant order 0.6: exact inverse is E_{0.6}(-t^{0.6}).
    auto F = [](qcplx s) {
        const qcplx sa = qexp(qreal(0.6) * qlog(s));
        return sa / s / (sa + qcplx{1, 0});
    };
    const double ref = 0.4133273409431063;  // E_{0.6}(-1), frozen oracle value
    // The truncation error decays geometrically in M while the extended
    // precision keeps the e^{2M/5} roundoff amplification below ~1e-12 up to
    // M = 128; past that the amplification takes over, so large M is not
    // better (M = 160 sits near 1e-7).
    const double err8 = std::fabs(talbot_invert(F, 1.0, TalbotConfig{8, 1.0}) - ref);
    CHECK(err8 < 1e-4);
    for (int M : {16, 32, 64, 128}) {
        const double err = std::fabs(talbot_invert(F, 1.0, TalbotConfig{M, 1.0}) - ref);
        CHECK(err <= err8);
        CHECK(err < 5e-12);
    }
}

TEST_CASE("talbot rejects non-finite transform values") {
    auto bad = [](qcplx) { return qcplx{qreal(std::nan("")), 0}; };
    CHECK_THROWS_AS(talbot_invert(bad, 1.0), std::runtime_error);
}

TEST_CASE("forward_lt on elementary functions") {
    auto one = [](double) { return 1.0; };
    auto r1 = forward_lt(one, 2.0, 40.0, 1e-10);
    CHECK(r1.value + r1.tail_bound >= 0.5 - 1e-10);
    CHECK(std::fabs(r1.value - 0.5) < 1e-9);
    CHECK_FALSE(r1.tail_warning);

    auto decay = [](double t) { return std::exp(-t); };
    auto r2 = forward_lt(decay, 1.0, 60.0, 1e-10);
    CHECK(std::fabs(r2.value - 0.5) < 1e-9);

    // Short window: the tail bound must flag the truncation.
    auto r3 = forward_lt(one, 0.1, 5.0, 1e-10);
    CHECK(r3.tail_warning);
    CHECK(r3.tail_bound > 1e-3);

    CHECK_THROWS_AS(forward_lt(one, 0.0, 10.0, 1e-8), std::domain_error);
}

TEST_CASE("forward transform of alpha(t) matches A(s)") {
    const auto exp_spec = TransitionSpec::exponential(0.6, 0.8, 2.0);
    const auto ml_spec = TransitionSpec::mittag_leffler_kind(0.6, 0.8, 2.0, 0.7);
    for (double s : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double T = std::max(200.0, 80.0 / s);
        const auto re = forward_lt([&](double t) { return alpha_at(exp_spec, t); }, s, T, 1e-9);
        CHECK(std::fabs(re.value - laplace_A(exp_spec, {s, 0.0}).real()) <
              1e-7 + re.tail_bound);
        const auto rm = forward_lt([&](double t) { return alpha_at(ml_spec, t); }, s, T, 1e-9);
        CHECK(std::fabs(rm.value - laplace_A(ml_spec, {s, 0.0}).real()) <
              1e-6 + rm.tail_bound);
    }
}
