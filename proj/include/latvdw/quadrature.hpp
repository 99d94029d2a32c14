#pragma once

// Trapezoid quadrature over the plane in elliptic coordinates with foci at q = 0
// and q = kappa:
//
//   q = kappa/2 + c cosh(mu) cos(nu) e + c sinh(mu) sin(nu) f,   c = |kappa|/2,
//
// with e = kappa/|kappa| and f perpendicular to e. Then |q| = c (cosh mu + cos nu),
// |q - kappa| = c (cosh mu - cos nu) and the Jacobian is |q| |q - kappa|. Integrands
// built from |q|, |q - kappa| and plane waves become entire in (mu, nu), so the
// periodic trapezoid rule converges geometrically in both directions.
//
// mu runs over the whole real line and nu over [0, 2 pi): this covers the plane
// twice, hence the factor 1/2.

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "latvdw/errors.hpp"

namespace latvdw::quadrature {

struct EllipticNode {
    double qx;
    double qy;
    double abs_q;  // |q|
    double abs_qp; // |q - kappa|
    double q_dot_qp;
};

struct EllipticPlan {
    double mu_max;
    int n_mu; // nodes on (0, mu_max); the same number mirrored on (-mu_max, 0)
    int n_nu;
};

struct Estimate {
    std::complex<double> value;
    double abs_sum; // integral of |integrand|, the scale for cancellation-aware tolerances
};

/// Truncation of mu so that exp(-|q| s1 - |q - kappa| s2) has dropped below ~e^-60
/// including polynomial growth of the prefactor.
inline double mu_cutoff(double kappa, double s1, double s2) {
    const double c = 0.5 * kappa;
    const double s = s1 + s2;
    const double cs = c * s;
    const double target = 60.0 + 6.0 * std::log(2.0 + 60.0 / cs) + c * std::abs(s1 - s2);
    return std::acosh(1.0 + target / cs);
}

/// f(node) must return integrand(q) * |q| * |q - kappa| (the Jacobian is left to the
/// caller so that removable 1/|q| factors can be cancelled analytically).
template <class F>
Estimate elliptic_trapezoid(double kappa_x, double kappa_y, const EllipticPlan& plan, F&& f) {
    const double kappa = std::hypot(kappa_x, kappa_y);
    const double c = 0.5 * kappa;
    const double ex = kappa_x / kappa;
    const double ey = kappa_y / kappa;
    const double h_mu = plan.mu_max / plan.n_mu;
    const double h_nu = 2.0 * std::numbers::pi / plan.n_nu;
    std::complex<double> sum{};
    double abs_sum = 0.0;
    for (int j = 0; j < plan.n_nu; ++j) {
        const double nu = (j + 0.5) * h_nu;
        const double cn = std::cos(nu);
        const double sn = std::sin(nu);
        for (int i = -plan.n_mu; i < plan.n_mu; ++i) {
            const double mu = (i + 0.5) * h_mu;
            const double ch = std::cosh(mu);
            const double sh = std::sinh(mu);
            const double X = c * ch * cn;
            const double Y = c * sh * sn;
            EllipticNode node{};
            node.qx = 0.5 * kappa_x + X * ex - Y * ey;
            node.qy = 0.5 * kappa_y + X * ey + Y * ex;
            node.abs_q = c * (ch + cn);
            node.abs_qp = c * (ch - cn);
            node.q_dot_qp = c * c * (ch * ch + cn * cn - 2.0);
            const std::complex<double> v = f(node);
            sum += v;
            abs_sum += std::abs(v);
        }
    }
    const double w = 0.5 * h_mu * h_nu;
    return {sum * w, abs_sum * w};
}

struct AdaptiveOptions {
    double rel_tol = 1e-12;
    int start_n_mu = 8;
    int start_n_nu = 16;
    int max_levels = 8;
};

struct AdaptiveResult {
    Estimate estimate;
    EllipticPlan plan; // the plan that produced the accepted estimate
};

/// Doubles both node counts until two successive estimates agree to
/// rel_tol * abs_sum.
template <class F>
AdaptiveResult elliptic_adaptive(double kappa_x, double kappa_y, double mu_max, F&& f,
                                 const AdaptiveOptions& opt = {}) {
    EllipticPlan plan{mu_max, opt.start_n_mu, opt.start_n_nu};
    Estimate prev = elliptic_trapezoid(kappa_x, kappa_y, plan, f);
    double last_diff = 0.0;
    for (int level = 1; level <= opt.max_levels; ++level) {
        plan.n_mu *= 2;
        plan.n_nu *= 2;
        const Estimate cur = elliptic_trapezoid(kappa_x, kappa_y, plan, f);
        last_diff = std::abs(cur.value - prev.value);
        if (last_diff <= opt.rel_tol * cur.abs_sum) {
            return {cur, plan};
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "elliptic quadrature did not converge: kappa=(" << kappa_x << ", " << kappa_y << "), mu_max=" << mu_max
        << ", final nodes " << 2 * plan.n_mu << "x" << plan.n_nu << ", last change " << last_diff
        << ", scale " << prev.abs_sum;
    throw NumericalError(msg.str());
}

} // namespace latvdw::quadrature
