#pragma once

// Electrostatic Green function for div(eps grad G) = -4 pi delta(r - r') with
// eps = eps1 below z = h(x, y) and eps2 above, expanded to first order in h.
//
// Fourier convention in the lateral plane:
//   G(r, r') = (2 pi)^-2 int d^2q exp(i q.r_par) g(q, z; r').
//
// Source above the interface (z' > 0), c = (eps1 - eps2)/(eps1 + eps2):
//   g0(z > 0) = 2 pi / (eps2 |q|) [exp(-|q| |z - z'|) - c exp(-|q| (z + z'))] exp(-i q.r'_par)
//   g0(z < 0) = 4 pi / ((eps1 + eps2) |q|) exp(|q| (z - z')) exp(-i q.r'_par)
//
// First order, summed over the profile modes (kappa_m, c_m) with q' = q - kappa_m:
//   g1(z > 0) = -exp(-|q| z)  sum_m c_m P_m (q^.q'^ + eps1/eps2)
//   g1(z < 0) =  exp( |q| z)  sum_m c_m P_m (1 - q^.q'^)
//   P_m = 4 pi (eps1 - eps2)/(eps1 + eps2)^2 exp(-i q'.r'_par) exp(-|q'| z')

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "latvdw/corrugation.hpp"
#include "latvdw/errors.hpp"
#include "latvdw/media.hpp"
#include "latvdw/quadrature.hpp"
#include "latvdw/tensor.hpp"

namespace latvdw {

enum class Branch { below, above };

struct FourierGreenEval {
    std::complex<double> value;
    Branch branch;
};

inline Branch branch_of(double z) { return z < 0.0 ? Branch::below : Branch::above; }

namespace detail {

inline void require_source_above(const GeometryPoint& source) {
    if (!(source.z0() > 0.0)) {
        throw DomainError("source point must lie above the mean interface");
    }
}

} // namespace detail

/// Zeroth-order transform; `branch` selects which half-space formula is used, so a
/// branch can be continued past z = 0 for one-sided derivatives.
inline FourierGreenEval g0_fourier(Vec2 q, double z, const GeometryPoint& source, const DielectricPair& pair,
                                   Branch branch) {
    const double aq = std::hypot(q.x, q.y);
    if (!(aq > 0.0)) {
        throw DomainError("g0_fourier requires |q| > 0");
    }
    const double zp = source.z0();
    const std::complex<double> phase = std::polar(1.0, -(q.x * source.x0() + q.y * source.y0()));
    double v = 0.0;
    if (branch == Branch::above) {
        v = 2.0 * std::numbers::pi / (pair.eps2() * aq) *
            (std::exp(-aq * std::abs(z - zp)) - contrast(pair) * std::exp(-aq * (z + zp)));
    } else {
        v = 4.0 * std::numbers::pi / ((pair.eps1() + pair.eps2()) * aq) * std::exp(aq * (z - zp));
    }
    return {v * phase, branch};
}

inline FourierGreenEval g0_fourier(Vec2 q, double z, const GeometryPoint& source, const DielectricPair& pair) {
    return g0_fourier(q, z, source, pair, branch_of(z));
}

/// Image part of G0 above the interface.
inline double image_term(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair) {
    const double dx = r.x0() - rp.x0();
    const double dy = r.y0() - rp.y0();
    const double dz = r.z0() + rp.z0();
    return -contrast(pair) / (pair.eps2() * std::sqrt(dx * dx + dy * dy + dz * dz));
}

/// Real-space zeroth order for both points above the interface.
inline double g0_real(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair) {
    const double dx = r.x0() - rp.x0();
    const double dy = r.y0() - rp.y0();
    const double dz = r.z0() - rp.z0();
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (d == 0.0) {
        throw DomainError("g0_real is singular at coincident points");
    }
    return 1.0 / (pair.eps2() * d) + image_term(r, rp, pair);
}

inline double first_order_strength(const DielectricPair& pair) {
    const double s = pair.eps1() + pair.eps2();
    return 4.0 * std::numbers::pi * (pair.eps1() - pair.eps2()) / (s * s);
}

inline FourierGreenEval g1_fourier(Vec2 q, double z, const GeometryPoint& source, const DielectricPair& pair,
                                   const FourierProfile& profile, Branch branch) {
    const double aq = std::hypot(q.x, q.y);
    if (!(aq > 0.0)) {
        throw DomainError("g1_fourier requires |q| > 0");
    }
    const double strength = first_order_strength(pair);
    std::complex<double> sum{};
    for (const auto& m : profile.modes()) {
        const double qpx = q.x - m.qx;
        const double qpy = q.y - m.qy;
        const double aqp = std::hypot(qpx, qpy);
        if (!(aqp > 0.0)) {
            throw DomainError("g1_fourier is singular where q coincides with a profile mode");
        }
        const double cosang = (q.x * qpx + q.y * qpy) / (aq * aqp);
        const std::complex<double> p =
            strength * std::exp(-aqp * source.z0()) * std::polar(1.0, -(qpx * source.x0() + qpy * source.y0()));
        const double bracket = branch == Branch::above ? cosang + pair.eps1() / pair.eps2() : 1.0 - cosang;
        sum += m.amplitude * p * bracket;
    }
    const double zf = branch == Branch::above ? -std::exp(-aq * z) : std::exp(aq * z);
    return {zf * sum, branch};
}

inline FourierGreenEval g1_fourier(Vec2 q, double z, const GeometryPoint& source, const DielectricPair& pair,
                                   const FourierProfile& profile) {
    return g1_fourier(q, z, source, pair, profile, branch_of(z));
}

/// Node plans for G1 at one pair of heights, one plan per profile mode.
using G1Plans = std::vector<quadrature::EllipticPlan>;

namespace detail {

// Contribution of one mode to G1(r, r') above the interface, integrand times Jacobian.
struct G1ModeIntegrand {
    double rx, ry, z, rpx, rpy, zp, kx, ky, eps_ratio; // eps_ratio = eps1/eps2

    std::complex<double> operator()(const quadrature::EllipticNode& n) const {
        const double qpx = n.qx - kx;
        const double qpy = n.qy - ky;
        const double decay = std::exp(-n.abs_q * z - n.abs_qp * zp);
        const double phase = n.qx * rx + n.qy * ry - (qpx * rpx + qpy * rpy);
        // (q^.q'^ + eps1/eps2) |q| |q'|
        const double w = n.q_dot_qp + eps_ratio * n.abs_q * n.abs_qp;
        return std::polar(w * decay, phase);
    }
};

inline G1ModeIntegrand g1_mode_integrand(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair,
                                         const FourierMode& m) {
    return {r.x0(), r.y0(), r.z0(), rp.x0(), rp.y0(), rp.z0(), m.qx, m.qy, pair.eps1() / pair.eps2()};
}

inline void require_above(const GeometryPoint& r, const GeometryPoint& rp) {
    if (!(r.z0() > 0.0) || !(rp.z0() > 0.0)) {
        throw DomainError("homogeneous Green function is evaluated for both points above the interface");
    }
}

} // namespace detail

/// Adaptive node plans for G1(r, r'); reusing them at nearby points keeps the
/// quadrature error smooth for finite differencing.
inline G1Plans g1_quadrature_plans(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair,
                                   const FourierProfile& profile, double rel_tol = 1e-13) {
    detail::require_above(r, rp);
    G1Plans plans;
    for (const auto& m : profile.modes()) {
        const double kappa = std::hypot(m.qx, m.qy);
        const double mu_max = quadrature::mu_cutoff(kappa, r.z0(), rp.z0());
        quadrature::AdaptiveOptions opt;
        opt.rel_tol = rel_tol;
        auto res = quadrature::elliptic_adaptive(m.qx, m.qy, mu_max, detail::g1_mode_integrand(r, rp, pair, m), opt);
        plans.push_back(res.plan);
    }
    return plans;
}

/// Real-space first-order Green function, both points above the interface.
inline double g1_real(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair,
                      const FourierProfile& profile, const G1Plans& plans) {
    detail::require_above(r, rp);
    if (plans.size() != profile.modes().size()) {
        throw ArgumentError("g1_real: one quadrature plan per profile mode is required");
    }
    std::complex<double> total{};
    double scale = 0.0;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const auto& m = profile.modes()[i];
        const auto est = quadrature::elliptic_trapezoid(m.qx, m.qy, plans[i], detail::g1_mode_integrand(r, rp, pair, m));
        total += m.amplitude * est.value;
        scale += std::abs(m.amplitude) * est.abs_sum;
    }
    const double pref = -first_order_strength(pair) / (4.0 * std::numbers::pi * std::numbers::pi);
    if (std::abs(total.imag()) > 1e-8 * scale + 1e-300) {
        std::ostringstream msg;
        msg << "g1_real: imaginary residue " << total.imag() << " exceeds tolerance (scale " << scale << ")";
        throw NumericalError(msg.str());
    }
    return pref * total.real();
}

inline double g1_real(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair,
                      const FourierProfile& profile) {
    return g1_real(r, rp, pair, profile, g1_quadrature_plans(r, rp, pair, profile));
}

/// Homogeneous part: planar image term plus the first-order correction.
inline double gh_homogeneous(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair,
                             const FourierProfile& profile) {
    detail::require_above(r, rp);
    if (profile.empty()) {
        return image_term(r, rp, pair);
    }
    return image_term(r, rp, pair) + g1_real(r, rp, pair, profile);
}

inline double gh_homogeneous(const GeometryPoint& r, const GeometryPoint& rp, const DielectricPair& pair,
                             const FourierProfile& profile, const G1Plans& plans) {
    detail::require_above(r, rp);
    return image_term(r, rp, pair) + (profile.empty() ? 0.0 : g1_real(r, rp, pair, profile, plans));
}

} // namespace latvdw
