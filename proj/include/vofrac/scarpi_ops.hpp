#pragma once

#include <utility>
#include <vector>

#include "vofrac/laplace.hpp"
#include "vofrac/transition.hpp"

namespace vofrac {

// phi and psi kernel samples on a uniform grid t_k = k*h (k = 1..N), inverted
// once per (spec, grid) and reused by the convolution quadratures. The
// singular exponents model the local power-law behavior of each kernel on
// (0, t_1), fitted from the two smallest grid points.
struct KernelTable {
    TransitionSpec spec;
    double h = 0.0;
    std::vector<double> grid;        // t_1..t_N
    std::vector<double> phi_values;  // phi(t_k)
    std::vector<double> psi_values;  // psi(t_k)
    double phi_singular_exponent = 0.0;  // in (-1, 0) for admissible specs
    double psi_singular_exponent = 0.0;
    // Per-interval kernel moments over [t_k, t_{k+1}] (t_0 = 0): m0 = int ker,
    // m1 = int u*ker. Obtained from the transforms of the running integrals
    // (Phi(s)/s and -Phi'(s)/s), so the singular head and every interior cell
    // are exact to inversion accuracy; the convolution quadrature is then
    // limited only by the piecewise-linear model of the convolved function.
    std::vector<double> phi_m0, phi_m1;
    std::vector<double> psi_m0, psi_m1;
};

KernelTable make_kernel_table(const TransitionSpec& spec, int n, double h,
                              const TalbotConfig& cfg = {});

// A function sampled on a uniform grid starting at t = 0. derivative_values
// may be empty; operations that need f' refuse to difference silently.
struct SampledFunction {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> derivative_values;
};

// Kernels phi = L^{-1}[s^{sA(s)-1}] and psi = L^{-1}[s^{-sA(s)}] at a single time.
double phi_kernel(const TransitionSpec& spec, double t, const TalbotConfig& cfg = {});
double psi_kernel(const TransitionSpec& spec, double t, const TalbotConfig& cfg = {});

// Scarpi derivative int_0^t phi(t - tau) f'(tau) dtau at grid node t, by
// product integration against the tabulated kernel. Throws if f lacks
// derivative samples or t is not a grid point.
double scarpi_derivative(const KernelTable& table, const SampledFunction& f, double t);
double scarpi_derivative(const TransitionSpec& spec, const SampledFunction& f, double t);

// Scarpi integral int_0^t psi(t - tau) f(tau) dtau at grid node t.
double scarpi_integral(const KernelTable& table, const SampledFunction& f, double t);
double scarpi_integral(const TransitionSpec& spec, const SampledFunction& f, double t);

// (max_t |I[Df](t) - (f(t) - f(0))|, max_t |D[If](t) - f(t)|) over the grid.
std::pair<double, double> fundamental_theorem_residual(const TransitionSpec& spec,
                                                       const SampledFunction& f);

}  // namespace vofrac
