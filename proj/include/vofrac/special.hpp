#pragma once

#include <complex>

namespace vofrac {

using cplx = std::complex<double>;

// Extended-precision complex type for the Talbot contour sum, whose roundoff
// is amplified by e^{rt}; see talbot_invert.
using qreal = __float128;
using qcplx = std::complex<qreal>;

qcplx qexp(qcplx z);
qcplx qlog(qcplx z);  // principal branch
inline cplx to_cplx(qcplx z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// A point rho*e^{+i*pi} or rho*e^{-i*pi} on one side of the negative-axis
// branch cut. As a complex number both are -rho; the stored sign picks which
// logarithm branch powers of the point use.
struct BranchPoint {
    double rho;  // modulus, > 0
    int sign;    // +1 or -1
};

struct MLParams {
    double beta;  // order, in (0, 2]
    double z;     // real argument
};

// exp(w * Ln s) with the principal logarithm, arg in (-pi, pi].
// Throws std::domain_error for s == 0.
cplx principal_power(cplx s, cplx w);

// Result of a branch power evaluated in log space. When Re(w * log s) leaves
// the representable exponent range the value is pinned and flagged so callers
// can substitute the analytic one-sided limit instead of consuming an IEEE
// infinity (or a silent zero).
struct BranchPowerResult {
    cplx value{};
    bool saturated = false;   // magnitude overflowed upward
    bool underflow = false;   // magnitude underflowed to zero
    double log_magnitude = 0; // Re(w * (ln rho + i*sign*pi))
};

// (rho * e^{i*sign*pi})^w computed as exp(w * (ln rho + i*sign*pi)).
BranchPowerResult branch_power(const BranchPoint& p, cplx w);

// One-parameter Mittag-Leffler function E_beta(z) for real z.
// Accuracy: ~1e-13 absolute for |z| <= 5, better than 1e-9 relative on
// z in [-1e4, 0).
double mittag_leffler(const MLParams& p);

// 1/Gamma(x) as a total function: exactly 0 at the poles of Gamma.
double gamma_reciprocal(double x);

// sin(pi*x) with argument reduction done on x (exact zeros at integers).
double sin_pi(double x);

namespace detail {
// The two evaluation routes behind mittag_leffler, exposed for the
// crossover-agreement tests. Both require z < 0.
double ml_taylor_ext(double beta, double z);
double ml_asymptotic(double beta, double z);
}  // namespace detail

}  // namespace vofrac
