#include "vofrac/laplace.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vofrac {

namespace {

bool finite_q(qcplx v) { return finiteq(v.real()) && finiteq(v.imag()); }

}  // namespace

double talbot_invert(const std::function<qcplx(qcplx)>& F, double t,
                     const TalbotConfig& cfg) {
    if (!(t > 0.0)) throw std::domain_error("talbot_invert: t must be positive");
    if (cfg.node_count < 8)
        throw std::domain_error("talbot_invert: node_count must be at least 8");
    const int M = cfg.node_count;
    const qreal pi = M_PIq;
    // Abate & Valko fixed-Talbot contour s(theta) = r*theta*(cot theta + i).
    const qreal r = (qreal)cfg.scaling * 2 * M / (5 * (qreal)t);
    const qreal tq = t;

    auto check = [&](qcplx v, int node) {
        if (!finite_q(v)) {
            std::ostringstream os;
            os << "talbot_invert: transform returned a non-finite value at node " << node;
            throw std::runtime_error(os.str());
        }
        return v;
    };

    qreal sum = qreal(0.5) * expq(r * tq) * check(F(qcplx{r, 0}), 0).real();
    for (int k = 1; k < M; ++k) {
        const qreal th = k * pi / M;
        const qreal cot = cosq(th) / sinq(th);
        const qcplx s{r * th * cot, r * th};
        const qreal sigma = th + (th * cot - 1) * cot;
        const qcplx v = check(F(s), k) * qcplx{1, sigma} * qexp(s * tq);
        sum += v.real();
    }
    return static_cast<double>(sum * r / M);
}

ForwardLTResult forward_lt(const std::function<double(double)>& f, double s,
                           double T, double tol) {
    if (!(s > 0.0)) throw std::domain_error("forward_lt: s must be positive");
    if (!(T > 0.0)) throw std::domain_error("forward_lt: T must be positive");
    if (!(tol > 0.0)) throw std::domain_error("forward_lt: tol must be positive");

    auto g = [&](double t) { return std::exp(-s * t) * f(t); };
    double err = 0.0;
    ForwardLTResult out;
    out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        g, 0.0, T, 14, tol, &err);

    // |int_T^inf e^{-s t} f| <= sup_{[T, 5T]} |f| * e^{-sT}/s, with the sup
    // estimated on a coarse sample (f is bounded for the function class in scope).
    double sup = 0.0;
    for (int i = 0; i <= 16; ++i) sup = std::max(sup, std::fabs(f(T + i * T / 4.0)));
    out.tail_bound = sup * std::exp(-s * T) / s;
    out.tail_warning = out.tail_bound > tol;
    return out;
}

}  // namespace vofrac
