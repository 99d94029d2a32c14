#pragma once

// Interaction energies in units with eps0 = 1 (divide by eps0 for SI):
//
//   U = (1/8pi) sum_ij D_ij d_i d'_j G_H(r, r') at r = r' = r0,
//
// with D_ij = d_i d_j for a permanent dipole and <d_i d_j> for a fluctuating one.
// To first order in the corrugation,
//
//   U1 = -F (1 - r)/(64 pi z0^4) sum_m c_m exp(i kappa_m.r0) D_ij [Icond_ij + r Idiel_ij](kappa_m z0),
//
// F = eps1^2/(eps2 (eps1 + eps2)^2), r = eps2/eps1. For h = a cos(k x) this is
//
//   U1 = -F 3a/(512 pi z0^4) (C cos k x0 + B sin k x0) = -F 3a A/(512 pi z0^4) cos(k x0 - delta).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "latvdw/corrugation.hpp"
#include "latvdw/dipole.hpp"
#include "latvdw/energy_types.hpp"
#include "latvdw/errors.hpp"
#include "latvdw/kernels.hpp"
#include "latvdw/media.hpp"
#include "latvdw/tensor.hpp"

namespace latvdw {

/// Energy of the flat interface.
inline EnergyValue u0(Channel channel, const Tensor3& D, const DielectricPair& pair, double z0) {
    if (!(z0 > 0.0)) {
        throw ArgumentError("z0 must be positive");
    }
    const double s = D(0, 0) + D(1, 1) + 2.0 * D(2, 2);
    const double v = -contrast(pair) * s / (pair.eps2() * 64.0 * std::numbers::pi * z0 * z0 * z0);
    return {v, Order::zeroth, channel, {}};
}

inline double du0_dz0(Channel channel, const Tensor3& D, const DielectricPair& pair, double z0) {
    return -3.0 * u0(channel, D, pair, z0).value / z0;
}

inline PhaseDecomposition bc_decomposition(const Tensor3& D, const DielectricPair& pair, double u) {
    if (!(u > 0.0)) {
        throw DomainError("bc_decomposition requires u = k z0 > 0");
    }
    const double r = pair.ratio();
    const RadialKernel c = radial(KernelFamily::cond, u);
    const RadialKernel d = radial(KernelFamily::diel, u);
    const double one_minus_r = 1.0 - r;
    const double sum = D(0, 0) * (c.xx + r * d.xx) + D(1, 1) * (c.yy + r * d.yy) + D(2, 2) * (c.zz + r * d.zz);
    const double dxz = 0.5 * (D(0, 2) + D(2, 0));
    return PhaseDecomposition::from_bc(-2.0 * dxz * one_minus_r * (c.xz + r * d.xz), one_minus_r * sum);
}

inline double sinusoidal_scale(const DielectricPair& pair, double a, double z0) {
    return -first_order_prefactor(pair) * 3.0 * a / (512.0 * std::numbers::pi * std::pow(z0, 4));
}

inline EnergyValue u1_sinusoidal(Channel channel, const Tensor3& D, const DielectricPair& pair,
                                 const SinusoidalProfile& profile, const GeometryPoint& point) {
    const double z0 = point.z0();
    const Validity val = validity(profile.a(), z0);
    if (profile.a() == 0.0) {
        return {0.0, Order::first, channel, val};
    }
    const PhaseDecomposition p = bc_decomposition(D, pair, profile.k() * z0);
    const double kx = profile.k() * point.x0();
    const double v = sinusoidal_scale(pair, profile.a(), z0) * (p.C * std::cos(kx) + p.B * std::sin(kx));
    return {v, Order::first, channel, val};
}

/// First order for any finite discrete spectrum, from the full vector kernels.
inline EnergyValue u1_general(Channel channel, const Tensor3& D, const DielectricPair& pair,
                              const FourierProfile& profile, const GeometryPoint& point) {
    const double z0 = point.z0();
    const double r = pair.ratio();
    std::complex<double> total{};
    double scale = 0.0;
    for (const auto& m : profile.modes()) {
        const KernelMatrix kc = kernel(KernelFamily::cond, m.qx * z0, m.qy * z0);
        const KernelMatrix kd = kernel(KernelFamily::diel, m.qx * z0, m.qy * z0);
        std::complex<double> contraction{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                contraction += D(i, j) * (kc(i, j) + r * kd(i, j));
            }
        }
        const std::complex<double> term =
            m.amplitude * std::polar(1.0, m.qx * point.x0() + m.qy * point.y0()) * contraction;
        total += term;
        scale += std::abs(term);
    }
    if (std::abs(total.imag()) > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "u1_general: imaginary residue " << total.imag() << " relative to mode-sum scale " << scale;
        throw NumericalError(msg.str());
    }
    const double v = -first_order_prefactor(pair) * (1.0 - r) / (64.0 * std::numbers::pi * std::pow(z0, 4)) *
                     total.real();
    return {v, Order::first, channel, validity(profile.amplitude_bound(), z0)};
}

/// Location of the lateral energy minimum in [0, lambda); nullopt when A = 0.
inline std::optional<double> x_min(const PhaseDecomposition& p, const SinusoidalProfile& profile) {
    if (!(p.A > 0.0)) {
        return std::nullopt;
    }
    double d = std::fmod(p.delta, 2.0 * std::numbers::pi);
    if (d < 0.0) {
        d += 2.0 * std::numbers::pi;
    }
    double x = d / profile.k();
    if (x >= profile.lambda()) {
        x = 0.0;
    }
    return x;
}

/// Long-period limit: U1 -> -h(x0) dU0/dz0.
inline EnergyValue pfa_first_order(Channel channel, const Tensor3& D, const DielectricPair& pair,
                                   const SinusoidalProfile& profile, const GeometryPoint& point) {
    const double v = -height(profile, point.x0()) * du0_dz0(channel, D, pair, point.z0());
    return {v, Order::first, channel, validity(profile.a(), point.z0())};
}

/// U * 64 pi z0^3 / trace(D), the dimensionless reduced energy.
inline double normalized_energy(double value, const Tensor3& D, double z0) {
    const double tr = D.trace();
    if (!(tr > 0.0)) {
        throw ArgumentError("normalized energy needs trace(D) > 0");
    }
    return value * 64.0 * std::numbers::pi * z0 * z0 * z0 / tr;
}

/// Energy in joules when dipoles are in C m and lengths in m.
inline double to_si(double value) { return value / kVacuumPermittivity; }

} // namespace latvdw
