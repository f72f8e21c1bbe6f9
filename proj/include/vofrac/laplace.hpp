#pragma once

#include <functional>

#include "vofrac/special.hpp"

namespace vofrac {

struct TalbotConfig {
    int node_count = 64;   // M >= 8, even preferred
    double scaling = 1.0;  // contour scale multiplier
};

// Fixed-Talbot inverse Laplace transform of F at time t. F must be analytic
// off the negative real axis and vanish as Re(s) -> inf. The contour sum
// amplifies roundoff by e^{2M/5}, so both the nodes and the transform are
// evaluated in extended precision; that keeps M = 64 at ~1e-8 true error or
// better instead of the ~1e-5 a double-precision sum would bottom out at.
// Throws std::domain_error for t <= 0 and std::runtime_error (naming the
// node) if F returns a non-finite value on the contour.
double talbot_invert(const std::function<qcplx(qcplx)>& F, double t,
                     const TalbotConfig& cfg = {});

struct ForwardLTResult {
    double value = 0.0;       // quadrature of e^{-s t} f on [0, T]
    double tail_bound = 0.0;  // estimate of the discarded |int_T^inf|
    bool tail_warning = false;  // tail bound exceeded the requested tol
};

// Adaptive quadrature of int_0^T e^{-s t} f(t) dt with an analytic bound on
// the truncated tail. Throws std::domain_error for s <= 0.
ForwardLTResult forward_lt(const std::function<double(double)>& f, double s,
                           double T, double tol);

}  // namespace vofrac
