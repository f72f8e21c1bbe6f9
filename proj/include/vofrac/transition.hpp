#pragma once

#include <string>

#include "vofrac/special.hpp"

namespace vofrac {

enum class TransitionKind { Constant, Exponential, MittagLefflerKind };

// The variable order alpha(t) together with its closed-form Laplace
// transform A(s). Only families with a known A(s) are admissible.
struct TransitionSpec {
    TransitionKind kind = TransitionKind::Constant;
    double alpha1 = 0.5;  // order at t -> 0+
    double alpha2 = 0.5;  // order at t -> inf (unused for Constant)
    double c = 1.0;       // transition rate (unused for Constant)
    double beta = 1.0;    // ML order in (0, 1], MittagLefflerKind only

    static TransitionSpec constant(double alpha) {
        return {TransitionKind::Constant, alpha, alpha, 1.0, 1.0};
    }
    static TransitionSpec exponential(double a1, double a2, double c) {
        return {TransitionKind::Exponential, a1, a2, c, 1.0};
    }
    static TransitionSpec mittag_leffler_kind(double a1, double a2, double c, double beta) {
        return {TransitionKind::MittagLefflerKind, a1, a2, c, beta};
    }
};

double initial_order(const TransitionSpec& spec);  // alpha at t -> 0+
double final_order(const TransitionSpec& spec);    // alpha at t -> inf

// alpha(t); throws std::domain_error for t < 0.
double alpha_at(const TransitionSpec& spec, double t);

// Closed-form A(s) = L[alpha](s); throws std::domain_error at poles (s = 0,
// s = -c for Exponential, s^beta = -c for MittagLefflerKind).
cplx laplace_A(const TransitionSpec& spec, cplx s);

// s*A(s) in the algebraically cancelled form, finite at s = 0.
cplx s_times_A(const TransitionSpec& spec, cplx s);
// Same on the branch cut; s^beta uses the logarithm branch of p.
cplx s_times_A(const TransitionSpec& spec, const BranchPoint& p);
// Extended-precision evaluation for the Talbot-side transforms.
qcplx s_times_A(const TransitionSpec& spec, qcplx s);

struct ValidationReport {
    bool pass = true;
    std::string first_violation;  // empty when pass
};

// Invariant checks plus numerical confirmation of the Tauberian endpoint
// orders and of alpha(t) staying inside (0, 1) on a log grid.
ValidationReport validate(const TransitionSpec& spec);

}  // namespace vofrac
