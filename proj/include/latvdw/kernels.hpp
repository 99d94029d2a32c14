#pragma once

// Closed-form first-order kernels. With Q = |q| z0 (q the transfer momentum),
// K_n = K_n(Q), and all entries dimensionless:
//
//   cond: xx = 3/8 Q^2 (Q K3 - Qx^2 K2)        xy = -3/8 Qx Qy Q^2 K2
//         zz = (2Q^2 + 3/8 Q^4) K2 + Q^3/4 K3  xz = i Qx Q^2 (K2 - 3/8 Q K3)
//   diel: xx = (4Qx^2 + 3Q^2 + 3/8 Qx^2 Q^2) K2 - (Qx^2 Q + 3/8 Q^3) K3
//         xy = Qx Qy ((4 + 3/8 Q^2) K2 - Q K3)
//         zz = 3/4 Q^3 K3 - 3/8 Q^4 K2         xz = i Qx Q^2 (3/8 Q K3 - 2 K2)
//
// yy and yz follow by x <-> y. For q along x the entries reduce to 3/8 R(u).

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latvdw/errors.hpp"
#include "latvdw/kernel_types.hpp"
#include "latvdw/numerics.hpp"
#include "latvdw/specialfn.hpp"

namespace latvdw {

inline KernelMatrix kernel(KernelFamily family, double qx, double qy) {
    const double q = std::hypot(qx, qy);
    if (!(q > 0.0)) {
        throw DomainError("kernel requires a nonzero transfer momentum");
    }
    const auto [k0, k1, K2, K3] = bessel_k_upto3(q);
    const double q2 = q * q;
    KernelMatrix m;
    if (family == KernelFamily::cond) {
        m.xx = 0.375 * q2 * (q * K3 - qx * qx * K2);
        m.yy = 0.375 * q2 * (q * K3 - qy * qy * K2);
        m.zz = (2.0 * q2 + 0.375 * q2 * q2) * K2 + 0.25 * q2 * q * K3;
        m.xy = -0.375 * qx * qy * q2 * K2;
        const double t = q2 * (K2 - 0.375 * q * K3);
        m.xz_im = qx * t;
        m.yz_im = qy * t;
    } else {
        m.xx = (4.0 * qx * qx + 3.0 * q2 + 0.375 * qx * qx * q2) * K2 - (qx * qx * q + 0.375 * q2 * q) * K3;
        m.yy = (4.0 * qy * qy + 3.0 * q2 + 0.375 * qy * qy * q2) * K2 - (qy * qy * q + 0.375 * q2 * q) * K3;
        m.zz = 0.75 * q2 * q * K3 - 0.375 * q2 * q2 * K2;
        m.xy = qx * qy * ((4.0 + 0.375 * q2) * K2 - q * K3);
        const double t = q2 * (0.375 * q * K3 - 2.0 * K2);
        m.xz_im = qx * t;
        m.yz_im = qy * t;
    }
    return m;
}

/// Kernel values for a corrugation along x at u = k z0.
struct RadialKernel {
    double xx;
    double yy;
    double zz;
    double xz;
};

enum class RadialComponent { xx, yy, zz, xz };

inline std::string_view to_string(RadialComponent c) {
    switch (c) {
    case RadialComponent::xx:
        return "xx";
    case RadialComponent::yy:
        return "yy";
    case RadialComponent::zz:
        return "zz";
    default:
        return "xz";
    }
}

inline constexpr std::array<RadialComponent, 4> kRadialComponents{RadialComponent::xx, RadialComponent::yy,
                                                                  RadialComponent::zz, RadialComponent::xz};

inline RadialKernel radial(KernelFamily family, double u) {
    if (!(u > 0.0)) {
        throw DomainError("radial kernel requires u = k z0 > 0, got " + std::to_string(u));
    }
    const auto s = bessel_k_upto3(u);
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double u4 = u2 * u2;
    if (family == KernelFamily::cond) {
        return {u3 * s.k3 - u4 * s.k2, u3 * s.k3, (16.0 / 3.0 * u2 + u4) * s.k2 + 2.0 / 3.0 * u3 * s.k3,
                8.0 / 3.0 * u3 * s.k2 - u4 * s.k3};
    }
    return {(56.0 / 3.0 * u2 + u4) * s.k2 - 11.0 / 3.0 * u3 * s.k3, 8.0 * u2 * s.k2 - u3 * s.k3,
            2.0 * u3 * s.k3 - u4 * s.k2, u4 * s.k3 - 16.0 / 3.0 * u3 * s.k2};
}

inline double radial_component(const RadialKernel& r, RadialComponent c) {
    switch (c) {
    case RadialComponent::xx:
        return r.xx;
    case RadialComponent::yy:
        return r.yy;
    case RadialComponent::zz:
        return r.zz;
    default:
        return r.xz;
    }
}

struct SignRoot {
    double u;
    double lambda_over_z0;
};

/// Sign change of one radial kernel on u in (0.05, 50).
inline std::optional<SignRoot> radial_sign_root(KernelFamily family, RadialComponent component) {
    static const std::vector<double> grid = numerics::logspace(0.05, 50.0, 512);
    const auto f = [&](double u) { return radial_component(radial(family, u), component); };
    const auto roots = numerics::bracket_roots(f, grid, 1e-13);
    if (roots.empty()) {
        return std::nullopt;
    }
    const double u = roots.front();
    return SignRoot{u, 2.0 * std::numbers::pi / u};
}

} // namespace latvdw
