#include "vofrac/transition.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <quadmath.h>

namespace vofrac {

namespace {
constexpr double kPoleTol = 1e-14;

[[noreturn]] void pole_error(const char* which, cplx s) {
    std::ostringstream os;
    os << "laplace_A: input hits the pole " << which << " (s = " << s.real()
       << (s.imag() < 0 ? " - " : " + ") << std::fabs(s.imag()) << "i)";
    throw std::domain_error(os.str());
}
}  // namespace

double initial_order(const TransitionSpec& spec) { return spec.alpha1; }

double final_order(const TransitionSpec& spec) {
    return spec.kind == TransitionKind::Constant ? spec.alpha1 : spec.alpha2;
}

double alpha_at(const TransitionSpec& spec, double t) {
    if (t < 0.0) throw std::domain_error("alpha_at: t must be nonnegative");
    switch (spec.kind) {
        case TransitionKind::Constant:
            return spec.alpha1;
        case TransitionKind::Exponential:
            return spec.alpha2 + (spec.alpha1 - spec.alpha2) * std::exp(-spec.c * t);
        case TransitionKind::MittagLefflerKind: {
            const double e = t == 0.0
                                 ? 1.0
                                 : mittag_leffler({spec.beta, -spec.c * std::pow(t, spec.beta)});
            return spec.alpha2 + (spec.alpha1 - spec.alpha2) * e;
        }
    }
    throw std::logic_error("alpha_at: unknown kind");
}

cplx laplace_A(const TransitionSpec& spec, cplx s) {
    if (std::abs(s) == 0.0) pole_error("s = 0", s);
    switch (spec.kind) {
        case TransitionKind::Constant:
            return spec.alpha1 / s;
        case TransitionKind::Exponential: {
            if (std::abs(s + spec.c) <= kPoleTol * spec.c) pole_error("s = -c", s);
            return (spec.alpha1 * s + spec.alpha2 * spec.c) / (s * (s + spec.c));
        }
        case TransitionKind::MittagLefflerKind: {
            const cplx sb = principal_power(s, spec.beta);
            if (std::abs(sb + spec.c) <= kPoleTol * spec.c) pole_error("s^beta = -c", s);
            return (spec.alpha1 * sb + spec.alpha2 * spec.c) / (s * (sb + spec.c));
        }
    }
    throw std::logic_error("laplace_A: unknown kind");
}

cplx s_times_A(const TransitionSpec& spec, cplx s) {
    switch (spec.kind) {
        case TransitionKind::Constant:
            return spec.alpha1;
        case TransitionKind::Exponential: {
            if (std::abs(s + spec.c) <= kPoleTol * spec.c) pole_error("s = -c", s);
            return (spec.alpha1 * s + spec.alpha2 * spec.c) / (s + spec.c);
        }
        case TransitionKind::MittagLefflerKind: {
            if (std::abs(s) == 0.0) return spec.alpha2;  // algebraic limit
            const cplx sb = principal_power(s, spec.beta);
            if (std::abs(sb + spec.c) <= kPoleTol * spec.c) pole_error("s^beta = -c", s);
            return (spec.alpha1 * sb + spec.alpha2 * spec.c) / (sb + spec.c);
        }
    }
    throw std::logic_error("s_times_A: unknown kind");
}

cplx s_times_A(const TransitionSpec& spec, const BranchPoint& p) {
    switch (spec.kind) {
        case TransitionKind::Constant:
            return spec.alpha1;
        case TransitionKind::Exponential: {
            // Rational in s, so the branch choice is immaterial: s = -rho.
            const cplx s{-p.rho, 0.0};
            if (std::abs(s + spec.c) <= kPoleTol * spec.c) pole_error("s = -c", s);
            return (spec.alpha1 * s + spec.alpha2 * spec.c) / (s + spec.c);
        }
        case TransitionKind::MittagLefflerKind: {
            const cplx sb = branch_power(p, spec.beta).value;
            if (std::abs(sb + spec.c) <= kPoleTol * spec.c)
                pole_error("s^beta = -c", {-p.rho, 0.0});
            return (spec.alpha1 * sb + spec.alpha2 * spec.c) / (sb + spec.c);
        }
    }
    throw std::logic_error("s_times_A: unknown kind");
}

qcplx s_times_A(const TransitionSpec& spec, qcplx s) {
    switch (spec.kind) {
        case TransitionKind::Constant:
            return qcplx{spec.alpha1, 0};
        case TransitionKind::Exponential: {
            const qcplx d = s + (qreal)spec.c;
            if (d == qcplx{0, 0}) pole_error("s = -c", to_cplx(s));
            return ((qreal)spec.alpha1 * s + qreal(spec.alpha2) * (qreal)spec.c) / d;
        }
        case TransitionKind::MittagLefflerKind: {
            if (s == qcplx{0, 0}) return qcplx{spec.alpha2, 0};
            const qcplx sb = qexp((qreal)spec.beta * qlog(s));
            const qcplx d = sb + (qreal)spec.c;
            if (d == qcplx{0, 0}) pole_error("s^beta = -c", to_cplx(s));
            return ((qreal)spec.alpha1 * sb + qreal(spec.alpha2) * (qreal)spec.c) / d;
        }
    }
    throw std::logic_error("s_times_A: unknown kind");
}

ValidationReport validate(const TransitionSpec& spec) {
    auto fail = [](std::string why) { return ValidationReport{false, std::move(why)}; };
    if (!(spec.alpha1 > 0.0 && spec.alpha1 < 1.0))
        return fail("alpha1 must lie strictly in (0, 1)");
    if (spec.kind != TransitionKind::Constant) {
        if (!(spec.alpha2 > 0.0 && spec.alpha2 < 1.0))
            return fail("alpha2 must lie strictly in (0, 1)");
        if (!(spec.c > 0.0)) return fail("c must be positive");
    }
    if (spec.kind == TransitionKind::MittagLefflerKind &&
        !(spec.beta > 0.0 && spec.beta <= 1.0))
        return fail("beta must lie in (0, 1]");

    // Tauberian endpoints of s*A(s).
    const double tol = 1e-4;
    const double hi = s_times_A(spec, cplx{1e6, 0.0}).real();
    if (std::fabs(hi - initial_order(spec)) > tol)
        return fail("s*A(s) at s=1e6 does not match the initial order");
    const double lo = s_times_A(spec, cplx{1e-6, 0.0}).real();
    if (std::fabs(lo - final_order(spec)) > tol)
        return fail("s*A(s) at s=1e-6 does not match the final order");

    // alpha(t) range on a log-spaced grid.
    for (int i = 0; i <= 120; ++i) {
        const double t = std::pow(10.0, -6.0 + i * 0.1);
        const double a = alpha_at(spec, t);
        if (!(a > 0.0 && a < 1.0))
            return fail("alpha(t) leaves (0, 1) at t = " + std::to_string(t));
    }
    return {};
}

}  // namespace vofrac
