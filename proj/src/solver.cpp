#include "vofrac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vofrac {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kExpOverflow = 690.0;

using boost::math::quadrature::gauss_kronrod;

// s^{q-1}/(s^q + lambda) evaluated as 1/(s (1 + lambda s^{-q})) with the
// limit regimes made explicit: when lambda s^{-q} overflows the transform is
// s^{q-1}/lambda, and when it underflows it is 1/s. If den_abs is given it
// receives |1 + lambda s^{-q}| in the direct regime (denominator monitor).
cplx u_hat_stable(double lambda, cplx s_value, cplx q, cplx log_s,
                  double* den_abs = nullptr) {
    const cplx e = -q * log_s;
    if (e.real() > kExpOverflow) {
        cplx e2 = (q - 1.0) * log_s;
        if (e2.real() < -kExpOverflow) return {0.0, 0.0};
        if (e2.real() > kExpOverflow) e2 = {kExpOverflow, e2.imag()};  // saturate
        return std::exp(e2) / lambda;
    }
    if (e.real() < -kExpOverflow) return 1.0 / s_value;
    const cplx den = 1.0 + lambda * std::exp(e);
    if (den_abs) *den_abs = std::abs(den);
    return 1.0 / (s_value * den);
}

// Extended-precision u_hat for the Talbot oracle (the contour sum amplifies
// the transform's roundoff, so the transform must match its precision).
qcplx u_hat_q(const RelaxProblem& problem, qcplx s) {
    const qcplx q = s_times_A(problem.spec, s);
    const qcplx L = qlog(s);
    const qcplx e = -q * L;
    const qreal lam = problem.lambda;
    const qreal u0 = problem.u0;
    if (e.real() > qreal(11000)) {
        const qcplx e2 = (q - qcplx{1, 0}) * L;
        if (e2.real() < qreal(-11000)) return {0, 0};
        return u0 * qexp(e2) / lam;
    }
    if (e.real() < qreal(-11000)) return u0 / s;
    return u0 / (s * (qcplx{1, 0} + lam * qexp(e)));
}

bool uses_ray_route(const TransitionSpec& spec) {
    // Kinds whose s*A(s) has a pole at s = -c on the cut; the zeros of
    // s^{sA(s)} + lambda accumulate there just off the axis.
    return spec.kind == TransitionKind::Exponential ||
           (spec.kind == TransitionKind::MittagLefflerKind && spec.beta == 1.0);
}

double interior_abscissa(const TransitionSpec& spec) {
    switch (spec.kind) {
        case TransitionKind::Exponential: return spec.c;
        case TransitionKind::MittagLefflerKind:
            return spec.beta == 1.0 ? spec.c : 0.0;  // no real-axis pole for beta < 1
        default: return 0.0;
    }
}

}  // namespace

const char* method_name(SolveMethod m) {
    switch (m) {
        case SolveMethod::branch_cut: return "branch_cut";
        case SolveMethod::talbot: return "talbot";
        case SolveMethod::co_reference: return "co_reference";
    }
    return "?";
}

cplx u_hat(const RelaxProblem& problem, cplx s) {
    if (s == cplx(0.0, 0.0)) throw std::domain_error("u_hat: s = 0");
    return problem.u0 *
           u_hat_stable(problem.lambda, s, s_times_A(problem.spec, s), std::log(s));
}

cplx u_hat(const RelaxProblem& problem, const BranchPoint& p) {
    const cplx log_s{std::log(p.rho), p.sign * kPi};
    return problem.u0 * u_hat_stable(problem.lambda, cplx{-p.rho, 0.0},
                                     s_times_A(problem.spec, p), log_s);
}

cplx branch_term(const RelaxProblem& problem, double rho, double t, int sign) {
    if (!(rho > 0.0)) throw std::domain_error("branch_term: rho must be positive");
    return u_hat(problem, BranchPoint{rho, sign}) / problem.u0 * std::exp(-rho * t);
}

double branch_integrand(const RelaxProblem& problem, double rho, double t,
                        IntegrandForm form) {
    if (!(rho > 0.0) || !(t > 0.0))
        throw std::domain_error("branch_integrand: rho and t must be positive");
    const double a = interior_abscissa(problem.spec);
    if (a > 0.0 && std::fabs(rho - a) < 1e-13 * a)
        throw std::domain_error(
            "branch_integrand: rho equals the interior singular abscissa");

    if (form == IntegrandForm::Auto)
        form = problem.spec.kind == TransitionKind::Exponential ? IntegrandForm::Concise
                                                                : IntegrandForm::General;
    if (form == IntegrandForm::General) {
        const cplx lower = branch_term(problem, rho, t, -1);
        const cplx upper = branch_term(problem, rho, t, +1);
        return 0.5 * (lower.imag() - upper.imag());
    }

    // Concise exponential-kind form.
    if (problem.spec.kind != TransitionKind::Exponential)
        throw std::invalid_argument(
            "branch_integrand: the concise form exists only for the exponential kind");
    const double a1 = problem.spec.alpha1, a2 = problem.spec.alpha2, c = problem.spec.c;
    const double lam = problem.lambda;
    const double w = (a1 * rho - a2 * c) / (c - rho);
    const double lw = w * std::log(rho);
    const double et = std::exp(-rho * t);
    if (lw > 300.0)  // rho^w dominates: divide through by lambda^2 rho^{2w}
        return -sin_pi(w) * std::exp(-lw) * et / (lam * rho);
    if (lw < -300.0)  // rho^w negligible against 1
        return -lam * std::exp(lw) * sin_pi(w) * et / rho;
    const double pw = std::exp(lw);
    const double den = rho * (1.0 + 2.0 * lam * pw * std::cos(kPi * w) + lam * lam * pw * pw);
    return -lam * pw * sin_pi(w) * et / den;
}

namespace {

// Shared quadrature of int_0^inf h(rho) drho where h ~ C rho^{atil-1} at 0.
// The head [0, rho_a] is regularized by rho = x^{1/atil}; the rest is
// adaptive Gauss-Kronrod up to rho_max.
template <class F>
double integrate_halfline(const F& h, double atil, double rho_a, double rho_max,
                          const QuadratureConfig& cfg, double& err_acc) {
    double e1 = 0.0, e2 = 0.0;
    const double xa = std::pow(rho_a, atil);
    auto head = [&](double x) {
        const double rho = std::pow(x, 1.0 / atil);
        return h(rho) * rho / (atil * x);  // d rho = rho/(atil x) dx
    };
    const double I1 = gauss_kronrod<double, 31>::integrate(head, 0.0, xa, 15,
                                                           cfg.rel_tol, &e1);
    // Integrate decade by decade: a single panel spanning many orders of
    // magnitude defeats the adaptive refinement when the integrand oscillates
    // slowly relative to its algebraic decay.
    double I2 = 0.0;
    for (double lo = rho_a; lo < rho_max;) {
        const double hi = std::min(10.0 * lo, rho_max);
        double ep = 0.0;
        I2 += gauss_kronrod<double, 31>::integrate(h, lo, hi, 12, cfg.rel_tol, &ep);
        e2 += ep;
        lo = hi;
    }
    err_acc += e1 + e2;
    return I1 + I2;
}

SolveResult solve_on_cut(const RelaxProblem& problem, double t,
                         const QuadratureConfig& cfg) {
    const auto& spec = problem.spec;
    const double atil = final_order(spec);
    const double c = spec.kind == TransitionKind::Constant ? 1.0 : spec.c;
    const double rho_max = std::max(cfg.rho_max_factor / t, 10.0 * c);
    const double rho_a = std::min(1.0, rho_max / 4.0);

    SolveResult out;
    if (spec.kind == TransitionKind::MittagLefflerKind) {
        // Verify the cut denominator stays away from zero before skipping the
        // interior split (no real-axis pole exists for beta < 1).
        double dmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 200; ++i) {
            const double rho = std::pow(10.0, -6.0 + 9.0 * i / 200.0);
            const cplx L{std::log(rho), -kPi};
            const cplx q = s_times_A(spec, BranchPoint{rho, -1});
            const cplx e = -q * L;
            if (e.real() > kExpOverflow || e.real() < -kExpOverflow) continue;
            dmin = std::min(dmin, std::abs(1.0 + problem.lambda * std::exp(e)));
        }
        if (dmin < 10.0 * cfg.split_delta) {
            out.note = "cut denominator nearly vanishes (min |1 + lambda s^{-sA}| = " +
                       std::to_string(dmin) + ")";
        }
    }

    auto h = [&](double rho) {
        return branch_integrand(problem, rho, t, IntegrandForm::General);
    };
    double err = 0.0;
    const double I = integrate_halfline(h, atil, rho_a, rho_max, cfg, err);
    out.u = problem.u0 / kPi * I;
    const double tail = std::exp(-rho_max * t) / (rho_max * t);
    out.err_est = std::fabs(problem.u0) / kPi * (err + tail);
    if (tail > cfg.rel_tol * std::fabs(out.u))
        out.note += std::string(out.note.empty() ? "" : "; ") + "tail bound above rel_tol";
    return out;
}

SolveResult solve_on_rays(const RelaxProblem& problem, double t,
                          const QuadratureConfig& cfg) {
    const auto& spec = problem.spec;
    const double atil = final_order(spec);
    const double c = spec.c;
    // The denominator zeros hug the cut at angle atan(|ln c|/pi) off it;
    // rotate the rays beyond that angle with a safety margin.
    double eta = std::clamp(std::atan(std::fabs(std::log(c)) / kPi) + 0.3, 0.35, 1.0);

    SolveResult out;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double phi = kPi - eta;
        const cplx dir{std::cos(phi), std::sin(phi)};
        double den_min = std::numeric_limits<double>::infinity();
        auto h = [&](double rho) {
            const cplx s = rho * dir;
            double den_abs = std::numeric_limits<double>::infinity();
            const cplx F = u_hat_stable(problem.lambda, s, s_times_A(spec, s),
                                        std::log(s), &den_abs);
            den_min = std::min(den_min, den_abs);
            const cplx v = dir * F * std::exp(s * t);
            return v.imag();
        };
        const double decay = t * std::cos(eta);
        const double rho_max = std::max(cfg.rho_max_factor / decay, 10.0 * c);
        const double rho_a = std::min(1.0, c) / 2.0;
        double err = 0.0;
        const double I = integrate_halfline(h, atil, rho_a, rho_max, cfg, err);
        if (den_min < 0.02 && attempt == 0) {
            eta = std::min(eta + 0.25, 1.2);  // ray ran close to a zero; steepen
            continue;
        }
        out.u = problem.u0 / kPi * I;
        const double tail = std::exp(-rho_max * decay) / (rho_max * decay);
        out.err_est = std::fabs(problem.u0) / kPi * (err + tail);
        if (den_min < 0.02)
            out.note = "ray passes near a denominator zero; result may lose accuracy";
        break;
    }
    if (c <= 1.0)
        out.note += std::string(out.note.empty() ? "" : "; ") +
                    "outside paper's analysis (c <= 1)";
    if (spec.alpha1 > spec.alpha2)
        out.note += std::string(out.note.empty() ? "" : "; ") +
                    "decreasing order: beyond the paper's one-sided-limit analysis";
    return out;
}

}  // namespace

SolveResult solve_branch_cut(const RelaxProblem& problem, double t,
                             const QuadratureConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("solve_branch_cut: t must be positive");
    if (!(problem.lambda > 0.0))
        throw std::domain_error("solve_branch_cut: lambda must be positive");
    const auto report = validate(problem.spec);
    if (!report.pass)
        throw std::invalid_argument("solve_branch_cut: invalid transition: " +
                                    report.first_violation);
    return uses_ray_route(problem.spec) ? solve_on_rays(problem, t, cfg)
                                        : solve_on_cut(problem, t, cfg);
}

double solve_talbot(const RelaxProblem& problem, double t, const TalbotConfig& cfg) {
    return talbot_invert([&](qcplx s) { return u_hat_q(problem, s); }, t, cfg);
}

double co_reference(double alpha, double lambda, double u0, double t) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("co_reference: alpha must lie in (0, 1)");
    if (!(lambda > 0.0)) throw std::domain_error("co_reference: lambda must be positive");
    if (t < 0.0) throw std::domain_error("co_reference: t must be nonnegative");
    if (t == 0.0) return u0;
    return u0 * mittag_leffler({alpha, -lambda * std::pow(t, alpha)});
}

namespace {

// One point of g(s) = s^{sA(s)} + lambda in polar coordinates, tracked for
// the argument-principle traversal. In the regime where |s^{sA}| dwarfs
// lambda the argument is taken as Im(q log s) directly, which is continuous
// (not reduced mod 2pi) and therefore immune to aliasing exactly where the
// spin is fastest.
struct ArgSample {
    double arg = 0.0;
    bool big = false;  // |e^{q log s}| >> lambda
};

ArgSample g_sample(const RelaxProblem& problem, double logr, double theta,
                   double abs_tol) {
    const cplx L{logr, theta};
    const cplx s = std::exp(L);
    cplx q;
    switch (problem.spec.kind) {
        case TransitionKind::Constant:
            q = problem.spec.alpha1;
            break;
        case TransitionKind::Exponential: {
            const cplx d = s + problem.spec.c;
            if (std::abs(d) == 0.0)
                throw std::runtime_error("winding_number: contour hits the pole s = -c");
            q = (problem.spec.alpha1 * s + problem.spec.alpha2 * problem.spec.c) / d;
            break;
        }
        case TransitionKind::MittagLefflerKind: {
            const cplx sb = std::exp(problem.spec.beta * L);
            const cplx d = sb + problem.spec.c;
            if (std::abs(d) == 0.0)
                throw std::runtime_error("winding_number: contour hits the pole s^beta = -c");
            q = (problem.spec.alpha1 * sb + problem.spec.alpha2 * problem.spec.c) / d;
            break;
        }
    }
    const cplx e = q * L;
    if (e.real() > std::log(problem.lambda + 1.0) + 40.0)
        return {e.imag(), true};
    const cplx g = std::exp(e) + problem.lambda;
    if (std::abs(g) <= 10.0 * abs_tol)
        throw std::runtime_error("winding_number: zero of s^{sA}+lambda on the contour");
    return {std::arg(g), false};
}

double wrap_pi(double d) {
    while (d > kPi) d -= 2.0 * kPi;
    while (d < -kPi) d += 2.0 * kPi;
    return d;
}

struct Traversal {
    const RelaxProblem* problem;
    double abs_tol;
    long nodes = 0;
    static constexpr long kMaxNodes = 1L << 20;

    double step(double lr1, double th1, const ArgSample& g1, double lr2, double th2,
                const ArgSample& g2, int depth) {
        double d;
        if (g1.big && g2.big) d = g2.arg - g1.arg;  // continuous phase, no wrap
        else d = wrap_pi(g2.arg - g1.arg);
        if (std::fabs(d) < kPi / 2.0) return d;
        if (++nodes > kMaxNodes || depth > 60)
            throw std::runtime_error(
                "winding_number: argument tracking did not converge "
                "(unbounded argument variation on the contour)");
        const double lrm = 0.5 * (lr1 + lr2), thm = 0.5 * (th1 + th2);
        const ArgSample gm = g_sample(*problem, lrm, thm, abs_tol);
        return step(lr1, th1, g1, lrm, thm, gm, depth + 1) +
               step(lrm, thm, gm, lr2, th2, g2, depth + 1);
    }
};

}  // namespace

int winding_number(const RelaxProblem& problem, const ContourSpec& contour) {
    const double R = contour.radius, eps = contour.inner_radius, s0 = contour.abscissa;
    if (!(eps > 0.0 && eps < R)) throw std::domain_error("winding_number: need 0 < eps < R");
    if (!(s0 > 0.0 && s0 < R)) throw std::domain_error("winding_number: need 0 < s0 < R");
    if (contour.nodes_per_segment < 64)
        throw std::domain_error("winding_number: nodes_per_segment must be >= 64");

    const double Y = std::sqrt(R * R - s0 * s0);
    const double th0 = std::atan2(Y, s0);
    const double lR = std::log(R), lE = std::log(eps);

    // The eight segments of the keyhole, counterclockwise, as tau in [0,1]
    // -> (log r, theta). The horizontal legs carry theta = +-pi so powers use
    // the intended side of the cut.
    struct Seg {
        double lr0, th0, lr1, th1;
    };
    auto vertical_lr = [&](double tau) {
        const double y = -Y + 2.0 * Y * tau;
        return std::pair<double, double>{0.5 * std::log(s0 * s0 + y * y),
                                         std::atan2(y, s0)};
    };
    const Seg segs[] = {
        {0, 0, 0, 0},                  // vertical (parametrized separately)
        {lR, th0, lR, kPi / 2.0},      // upper-right arc
        {lR, kPi / 2.0, lR, kPi},      // upper-left arc
        {lR, kPi, lE, kPi},            // upper lip of the cut, inward
        {lE, kPi, lE, -kPi},           // circle around the origin
        {lE, -kPi, lR, -kPi},          // lower lip, outward
        {lR, -kPi, lR, -kPi / 2.0},    // lower-left arc
        {lR, -kPi / 2.0, lR, -th0},    // lower-right arc
    };

    Traversal tr{&problem, /*abs_tol=*/1e-12, 0};
    double total = 0.0;
    for (int si = 0; si < 8; ++si) {
        const int n = contour.nodes_per_segment;
        double plr = 0.0, pth = 0.0;
        ArgSample pg;
        for (int i = 0; i <= n; ++i) {
            const double tau = static_cast<double>(i) / n;
            double lr, th;
            if (si == 0) std::tie(lr, th) = vertical_lr(tau);
            else {
                lr = segs[si].lr0 + (segs[si].lr1 - segs[si].lr0) * tau;
                th = segs[si].th0 + (segs[si].th1 - segs[si].th0) * tau;
            }
            const ArgSample g = g_sample(problem, lr, th, tr.abs_tol);
            if (i > 0) total += tr.step(plr, pth, pg, lr, th, g, 0);
            plr = lr;
            pth = th;
            pg = g;
        }
    }
    const double w = total / (2.0 * kPi);
    const long iw = std::lround(w);
    if (std::fabs(w - static_cast<double>(iw)) > 0.25)
        throw std::runtime_error("winding_number: accumulated argument is not a "
                                 "multiple of 2*pi (non-convergence)");
    return static_cast<int>(iw);
}

SolutionTable solve_grid(const RelaxProblem& problem, const std::vector<double>& times,
                         SolveMethod method, const QuadratureConfig& qcfg,
                         const TalbotConfig& tcfg) {
    if (times.empty()) throw std::invalid_argument("solve_grid: empty time grid");
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!(times[i] > 0.0) || (i > 0 && times[i] <= times[i - 1]))
            throw std::invalid_argument("solve_grid: times must be increasing and positive");

    SolutionTable table;
    for (double t : times) {
        try {
            SolutionRow row;
            row.t = t;
            row.method = method;
            switch (method) {
                case SolveMethod::branch_cut: {
                    const SolveResult r = solve_branch_cut(problem, t, qcfg);
                    row.u = r.u;
                    row.err_est = r.err_est;
                    if (!r.note.empty())
                        table.diagnostics.push_back("t=" + std::to_string(t) + ": " + r.note);
                    break;
                }
                case SolveMethod::talbot: {
                    row.u = solve_talbot(problem, t, tcfg);
                    TalbotConfig half = tcfg;
                    half.node_count = std::max(8, tcfg.node_count / 2);
                    row.err_est = std::fabs(row.u - solve_talbot(problem, t, half));
                    break;
                }
                case SolveMethod::co_reference: {
                    if (problem.spec.kind != TransitionKind::Constant)
                        throw std::invalid_argument(
                            "co_reference requires a constant-order spec");
                    row.u = co_reference(problem.spec.alpha1, problem.lambda, problem.u0, t);
                    row.err_est = 1e-12 * std::fabs(row.u);
                    break;
                }
            }
            table.rows.push_back(row);
        } catch (const std::exception& ex) {
            table.diagnostics.push_back("error: t=" + std::to_string(t) + ": " + ex.what());
        }
    }
    return table;
}

}  // namespace vofrac
