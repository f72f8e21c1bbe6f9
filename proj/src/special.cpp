#include "vofrac/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <quadmath.h>

namespace vofrac {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
// exp() overflows just above 709; keep a margin.
constexpr double kExpOverflow = 690.0;
}  // namespace

qcplx qexp(qcplx z) {
    const qreal m = expq(z.real());
    return {m * cosq(z.imag()), m * sinq(z.imag())};
}

qcplx qlog(qcplx z) {
    return {logq(hypotq(z.real(), z.imag())), atan2q(z.imag(), z.real())};
}

double sin_pi(double x) {
    // Reduce to |r| <= 0.5 so sin(pi*r) keeps full relative accuracy and
    // integer x maps to an exact zero.
    double r = std::fmod(x, 2.0);
    if (r > 1.0) r -= 2.0;
    else if (r < -1.0) r += 2.0;
    if (r > 0.5) r = 1.0 - r;
    else if (r < -0.5) r = -1.0 - r;
    if (r == 0.0) return 0.0;
    return std::sin(kPi * r);
}

cplx principal_power(cplx s, cplx w) {
    if (s == cplx(0.0, 0.0))
        throw std::domain_error("principal_power: s = 0 has no logarithm");
    if (w == cplx(0.0, 0.0)) return {1.0, 0.0};
    return std::exp(w * std::log(s));
}

BranchPowerResult branch_power(const BranchPoint& p, cplx w) {
    if (!(p.rho > 0.0))
        throw std::domain_error("branch_power: rho must be positive");
    if (p.sign != 1 && p.sign != -1)
        throw std::domain_error("branch_power: sign must be +1 or -1");
    const cplx log_s{std::log(p.rho), p.sign * kPi};
    const cplx e = w * log_s;
    BranchPowerResult out;
    out.log_magnitude = e.real();
    if (e.real() > kExpOverflow) {
        out.saturated = true;
        // Direction of the divergence; magnitude pinned to a large finite value.
        const double m = std::numeric_limits<double>::max() / 4.0;
        out.value = {m * std::cos(e.imag()), m * std::sin(e.imag())};
        return out;
    }
    if (e.real() < -kExpOverflow) {
        out.underflow = true;
        out.value = {0.0, 0.0};
        return out;
    }
    out.value = std::exp(e);
    return out;
}

double gamma_reciprocal(double x) {
    if (!std::isfinite(x))
        return 0.0;  // limit along the real axis in every non-finite case of interest
    if (x <= 0.0 && x == std::floor(x)) return 0.0;  // poles of Gamma
    if (x >= 0.5) return std::exp(-std::lgamma(x));
    // Reflection: 1/Gamma(x) = sin(pi x) * Gamma(1-x) / pi.
    const double s = sin_pi(x);
    const double lg = std::lgamma(1.0 - x);
    const double mag = std::log(std::fabs(s)) + lg - std::log(kPi);
    if (mag > kExpOverflow)
        return s > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
    return std::copysign(std::exp(mag), s);
}

namespace detail {

// Taylor series in 128-bit floats. Usable whenever the cancellation metric
// (peak log term magnitude) stays well below the ~78 nats of quad precision.
double ml_taylor_ext(double beta, double z) {
    const __float128 zb = z;
    const bool neg = z < 0.0;
    const __float128 la = logq(fabsq(zb));
    const __float128 b = beta;
    __float128 sum = 0;
    const double kstar = std::pow(std::fabs(z), 1.0 / beta) / beta;
    const long kmax = 400000;
    for (long k = 0; k < kmax; ++k) {
        const __float128 lt = k * la - lgammaq(b * k + 1);
        __float128 term = expq(lt);
        if (neg && (k & 1)) term = -term;
        sum += term;
        if (k > kstar + 4 && lt < -100) break;
    }
    return static_cast<double>(sum);
}

// log magnitude of 1/Gamma(1 - beta*k) via reflection; sign separately.
static void recip_gamma_reflected(double beta, long k, double& logmag, double& sign) {
    const double x = 1.0 - beta * k;  // <= 1 - beta < 1
    const double s = sin_pi(x);
    if (s == 0.0) { logmag = -std::numeric_limits<double>::infinity(); sign = 0.0; return; }
    logmag = std::log(std::fabs(s)) + std::lgamma(beta * k) - std::log(kPi);
    sign = s > 0 ? 1.0 : -1.0;
}

// Algebraic asymptotic series for z -> -inf, truncated at its smallest term,
// plus (for beta > 1) the pair of exponentially small oscillatory terms that
// are not negligible near beta = 2.
double ml_asymptotic(double beta, double z) {
    const double la = std::log(-z);
    long double sum = 0.0L;
    double best = std::numeric_limits<double>::infinity();
    for (long k = 1; k <= 10000; ++k) {
        double logmag, sign;
        recip_gamma_reflected(beta, k, logmag, sign);
        if (sign == 0.0) continue;  // pole of Gamma: term vanishes
        const double lt = -k * la + logmag;
        if (lt > best + 2.0 && k > 2) break;  // series started diverging
        if (lt < best) best = lt;
        // term = -z^{-k}/Gamma(1-beta k), z^{-k} = (-1)^k |z|^{-k}
        double term_sign = -sign * ((k & 1) ? -1.0 : 1.0);
        sum += static_cast<long double>(term_sign) * expl(lt);
        if (lt < -45.0) break;
    }
    double val = static_cast<double>(sum);
    if (beta > 1.0) {
        const double r = std::pow(-z, 1.0 / beta);
        const double th = kPi / beta;
        const double re = r * std::cos(th);
        if (re > -kExpOverflow)
            val += (2.0 / beta) * std::exp(re) * std::cos(r * std::sin(th));
    }
    return val;
}

// Estimated log absolute error of each route at (beta, z<0).
static double taylor_log_err(double beta, double z) {
    const double la = std::log(-z);
    const double kstar = std::max(1.0, std::pow(-z, 1.0 / beta) / beta);
    double peak = 0.0;
    for (double k : {std::floor(kstar), std::ceil(kstar), std::ceil(kstar) + 1}) {
        if (k < 0) continue;
        peak = std::max(peak, k * la - std::lgamma(beta * k + 1));
    }
    return peak - 77.0;  // quad-precision epsilon is ~e^{-77.6}
}

static double asym_log_err(double beta, double z) {
    const double la = std::log(-z);
    double best = std::numeric_limits<double>::infinity();
    for (long k = 1; k <= 400; ++k) {
        double logmag, sign;
        recip_gamma_reflected(beta, k, logmag, sign);
        if (sign == 0.0) continue;
        const double lt = -k * la + logmag;
        if (lt < best) best = lt;
        if (lt > best + 2.0 && k > 2) break;
    }
    return best;
}

}  // namespace detail

double mittag_leffler(const MLParams& p) {
    if (!(p.beta > 0.0) || !(p.beta <= 2.0) || !std::isfinite(p.beta))
        throw std::domain_error("mittag_leffler: beta must lie in (0, 2]");
    if (!std::isfinite(p.z))
        throw std::domain_error("mittag_leffler: z must be finite");
    const double z = p.z;
    if (z == 0.0) return 1.0;
    if (p.beta == 1.0) return std::exp(z);
    if (p.beta == 2.0)
        return z >= 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
    if (z > 0.0) return detail::ml_taylor_ext(p.beta, z);
    return detail::taylor_log_err(p.beta, z) <= detail::asym_log_err(p.beta, z)
               ? detail::ml_taylor_ext(p.beta, z)
               : detail::ml_asymptotic(p.beta, z);
}

}  // namespace vofrac
