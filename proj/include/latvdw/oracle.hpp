#pragma once

// Brute-force reference values. Nothing here uses the closed-form kernels or the
// closed-form energies.
//
// Kernel integrals, with q' = q - Q and z0 = 1:
//   I_ij = (8/pi) int d^2q sym(a_i b_j) W exp(-|q| - |q'|),
//   a = (i qx, i qy, -|q|),  b = (-i q'x, -i q'y, -|q'|),
// W = 1 (cond) or q^.q'^ (diel). a and b are the gradients of the plane-wave
// factors exp(i q.r - |q| z) and exp(-i q'.r' - |q'| z') of the first-order Green
// function.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "latvdw/corrugation.hpp"
#include "latvdw/energy_types.hpp"
#include "latvdw/errors.hpp"
#include "latvdw/greens.hpp"
#include "latvdw/kernel_types.hpp"
#include "latvdw/media.hpp"
#include "latvdw/quadrature.hpp"
#include "latvdw/tensor.hpp"

namespace latvdw::oracle {

using ComplexMatrix = std::array<std::array<std::complex<double>, 3>, 3>;

namespace detail {

// Integrates all six independent entries at once; weight_cond and weight_diel
// multiply the two families.
inline ComplexMatrix kernel_integrals(double qx, double qy, double weight_cond, double weight_diel) {
    const double Q = std::hypot(qx, qy);
    if (!(Q > 0.0)) {
        throw DomainError("kernel quadrature requires a nonzero transfer momentum");
    }
    const double mu_max = quadrature::mu_cutoff(Q, 1.0, 1.0);
    static constexpr std::array<std::array<int, 2>, 6> idx{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
    ComplexMatrix out{};
    for (const auto& [i, j] : idx) {
        const auto f = [&, i = i, j = j](const quadrature::EllipticNode& n) -> std::complex<double> {
            const double pqx = n.qx - qx;
            const double pqy = n.qy - qy;
            const std::array<std::complex<double>, 3> a{std::complex<double>(0, n.qx), std::complex<double>(0, n.qy),
                                                        -n.abs_q};
            const std::array<std::complex<double>, 3> b{std::complex<double>(0, -pqx), std::complex<double>(0, -pqy),
                                                        -n.abs_qp};
            const std::complex<double> s = 0.5 * (a[i] * b[j] + a[j] * b[i]);
            // W |q||q'|: the Jacobian is folded in here
            const double w = weight_cond * n.abs_q * n.abs_qp + weight_diel * n.q_dot_qp;
            return s * w * std::exp(-n.abs_q - n.abs_qp);
        };
        quadrature::AdaptiveOptions opt;
        opt.rel_tol = 1e-13;
        const auto res = quadrature::elliptic_adaptive(qx, qy, mu_max, f, opt);
        const std::complex<double> v = 8.0 / std::numbers::pi * res.estimate.value;
        out[i][j] = v;
        out[j][i] = v;
    }
    return out;
}

inline KernelMatrix to_kernel_matrix(const ComplexMatrix& m) {
    KernelMatrix k;
    k.xx = m[0][0].real();
    k.yy = m[1][1].real();
    k.zz = m[2][2].real();
    k.xy = m[0][1].real();
    k.xz_im = m[0][2].imag();
    k.yz_im = m[1][2].imag();
    return k;
}

} // namespace detail

/// One kernel family at transfer momentum (qx, qy) z0, by direct quadrature.
inline KernelMatrix kernel_by_quadrature(KernelFamily family, double qx_z0, double qy_z0) {
    const bool cond = family == KernelFamily::cond;
    return detail::to_kernel_matrix(detail::kernel_integrals(qx_z0, qy_z0, cond ? 1.0 : 0.0, cond ? 0.0 : 1.0));
}

/// Full bracket of the upper-branch Green function, (eps1/eps2 + q^.q'^), integrated
/// as one integrand, for checking the split into eps-independent families.
inline ComplexMatrix combined_kernel_by_quadrature(const DielectricPair& pair, double qx_z0, double qy_z0) {
    return detail::kernel_integrals(qx_z0, qy_z0, pair.eps1() / pair.eps2(), 1.0);
}

struct FiniteDifferenceEnergy {
    EnergyValue total;
    double zeroth;
    double first;
    double step_change; // |U(h) - U(h/2)| for the first-order part
};

namespace detail {

// d_i d'_j g(r, r') at r = r' = p by central differences, all nine entries.
template <class G>
std::array<std::array<double, 3>, 3> mixed_hessian(G&& g, const GeometryPoint& p, double h) {
    std::array<std::array<double, 3>, 3> m{};
    const auto shifted = [&](int axis, double s) {
        std::array<double, 3> x{p.x0(), p.y0(), p.z0()};
        x[axis] += s;
        return GeometryPoint(x[0], x[1], x[2]);
    };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double pp = g(shifted(i, h), shifted(j, h));
            const double pm = g(shifted(i, h), shifted(j, -h));
            const double mp = g(shifted(i, -h), shifted(j, h));
            const double mm = g(shifted(i, -h), shifted(j, -h));
            m[i][j] = (pp - pm - mp + mm) / (4.0 * h * h);
        }
    }
    return m;
}

inline double contract_symmetrized(const std::array<std::array<double, 3>, 3>& m, const Tensor3& D) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            s += D(i, j) * 0.5 * (m[i][j] + m[j][i]);
        }
    }
    return s / (8.0 * std::numbers::pi);
}

} // namespace detail

/// (1/8pi) D_ij d_i d'_j G_H at r = r' = r0 by finite differences of the
/// numerically transformed Green function. The step is 1e-4 z0; the result at
/// half the step must agree to rel_tol.
inline FiniteDifferenceEnergy energy_by_finite_difference(Channel channel, const Tensor3& D,
                                                          const DielectricPair& pair,
                                                          const SinusoidalProfile& profile,
                                                          const GeometryPoint& point, double rel_tol = 1e-6) {
    const double h = 1e-4 * point.z0();
    const auto image = [&](const GeometryPoint& r, const GeometryPoint& rp) { return image_term(r, rp, pair); };
    const double zeroth = detail::contract_symmetrized(detail::mixed_hessian(image, point, h), D);

    double first = 0.0;
    double change = 0.0;
    const FourierProfile fp = FourierProfile::from(profile);
    if (!fp.empty()) {
        const G1Plans plans = g1_quadrature_plans(point, point, pair, fp);
        const auto g1 = [&](const GeometryPoint& r, const GeometryPoint& rp) {
            return g1_real(r, rp, pair, fp, plans);
        };
        const double coarse = detail::contract_symmetrized(detail::mixed_hessian(g1, point, h), D);
        const double fine = detail::contract_symmetrized(detail::mixed_hessian(g1, point, 0.5 * h), D);
        change = std::abs(fine - coarse);
        const double scale = std::abs(fine) + std::abs(zeroth) * profile.a() / point.z0();
        if (change > rel_tol * scale) {
            std::ostringstream msg;
            msg << "finite-difference energy unstable under step halving: U(h)=" << coarse << ", U(h/2)=" << fine
                << ", h=" << h;
            throw NumericalError(msg.str());
        }
        first = fine;
    }
    return {{zeroth + first, Order::first, channel, validity(profile.a(), point.z0())}, zeroth, first, change};
}

} // namespace latvdw::oracle
