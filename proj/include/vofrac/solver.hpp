#pragma once

#include <string>
#include <vector>

#include "vofrac/laplace.hpp"
#include "vofrac/transition.hpp"

namespace vofrac {

// The Cauchy problem D^{alpha(t)} u = -lambda u, u(0) = u0.
struct RelaxProblem {
    TransitionSpec spec;
    double lambda = 1.0;
    double u0 = 1.0;
};

// Discretized keyhole contour around the negative-axis cut, used by the
// winding-number diagnostic.
struct ContourSpec {
    double radius = 100.0;       // R
    double inner_radius = 1e-3;  // epsilon
    double abscissa = 1.0;       // s0 of the vertical segment
    int nodes_per_segment = 64;
};

struct QuadratureConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double rho_max_factor = 50.0;  // truncation at max(factor/t, 10 c)
    double split_delta = 1e-3;     // half-width of the band excluded around an
                                   // interior singular abscissa (relative)
    int endpoint_exponent_nodes = 32;
};

enum class SolveMethod { branch_cut, talbot, co_reference };

struct SolutionRow {
    double t = 0.0;
    double u = 0.0;
    SolveMethod method = SolveMethod::branch_cut;
    double err_est = 0.0;
};

struct SolutionTable {
    std::vector<SolutionRow> rows;
    std::vector<std::string> diagnostics;  // per-row failures and regime flags
};

// Laplace-domain solution u0 * s^{sA(s)-1} / (s^{sA(s)} + lambda), evaluated
// in the rearranged form u0 / (s (1 + lambda s^{-sA(s)})) with the analytic
// limit substituted when the inner power leaves the double range.
cplx u_hat(const RelaxProblem& problem, cplx s);
cplx u_hat(const RelaxProblem& problem, const BranchPoint& p);

// The complex branch term T_sign(rho) e^{-rho t} = u_hat(rho e^{i sign pi}) / u0
// * e^{-rho t}; one-sided limits are substituted in the saturation regimes.
cplx branch_term(const RelaxProblem& problem, double rho, double t, int sign);

enum class IntegrandForm { Auto, General, Concise };

// Real cut integrand g(rho, t) with u(t) = (u0/pi) * int_0^inf g + residues.
// General: Im of the lower-branch term (the two branch terms are conjugate for
// real parameters). Concise: the closed exponential-kind rewrite with
// w = (alpha1 rho - alpha2 c)/(c - rho); exponential kind only.
double branch_integrand(const RelaxProblem& problem, double rho, double t,
                        IntegrandForm form = IntegrandForm::Auto);

struct SolveResult {
    double u = 0.0;
    double err_est = 0.0;
    std::string note;  // regime flags ("outside paper's analysis", ...)
};

// u(t) from the branch-cut representation. For kinds whose denominator
// s^{sA(s)} + lambda has no zeros off the cut (Constant, ML kind with
// beta < 1) this integrates along the cut itself; for the exponential kind,
// whose zeros accumulate at s = -c just off the cut, the two cut-hugging rays
// are rotated to arg s = +-(pi - eta) so every such zero is captured by the
// same integral instead of an explicit residue sum.
SolveResult solve_branch_cut(const RelaxProblem& problem, double t,
                             const QuadratureConfig& cfg = {});

// Independent oracle: fixed-Talbot inversion of u_hat.
double solve_talbot(const RelaxProblem& problem, double t, const TalbotConfig& cfg = {});

// Zeros of s^{sA(s)} + lambda inside the keyhole contour, by the argument
// principle with adaptive node refinement. Throws on a zero sitting on the
// contour or when refinement exceeds 2^20 nodes (non-convergence; for the
// exponential kind this genuinely happens because the argument variation near
// s = -c is unbounded).
int winding_number(const RelaxProblem& problem, const ContourSpec& contour);

// Constant-order reference u0 * E_alpha(-lambda t^alpha).
double co_reference(double alpha, double lambda, double u0, double t);

SolutionTable solve_grid(const RelaxProblem& problem, const std::vector<double>& times,
                         SolveMethod method, const QuadratureConfig& qcfg = {},
                         const TalbotConfig& tcfg = {});

const char* method_name(SolveMethod m);

}  // namespace vofrac
