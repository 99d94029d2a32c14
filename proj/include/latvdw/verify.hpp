#pragma once

// Closed-form kernels and energies checked against the quadrature and
// finite-difference oracles.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "latvdw/dipole.hpp"
#include "latvdw/energy.hpp"
#include "latvdw/kernels.hpp"
#include "latvdw/oracle.hpp"

namespace latvdw::verify {

struct Check {
    std::string name;
    double max_rel_error;
    double tolerance;
    [[nodiscard]] bool passed() const { return max_rel_error <= tolerance; }
};

inline constexpr double kKernelTolerance = 1e-6;
inline constexpr double kEnergyTolerance = 1e-4;

/// Largest entry error relative to the largest closed-form entry.
inline double kernel_mismatch(const KernelMatrix& numeric, const KernelMatrix& closed) {
    const double scale = std::max({std::abs(closed.xx), std::abs(closed.yy), std::abs(closed.zz),
                                   std::abs(closed.xy), std::abs(closed.xz_im), std::abs(closed.yz_im)});
    return std::max({std::abs(numeric.xx - closed.xx), std::abs(numeric.yy - closed.yy),
                     std::abs(numeric.zz - closed.zz), std::abs(numeric.xy - closed.xy),
                     std::abs(numeric.xz_im - closed.xz_im), std::abs(numeric.yz_im - closed.yz_im)}) /
           scale;
}

inline std::vector<Check> kernel_checks() {
    std::vector<Check> out;
    for (auto fam : {KernelFamily::cond, KernelFamily::diel}) {
        for (double u : {0.5, 1.0, 2.0, 5.0}) {
            double worst = 0.0;
            for (double ang : {0.0, 0.7, std::numbers::pi / 2}) {
                const double qx = u * std::cos(ang);
                const double qy = u * std::sin(ang);
                worst = std::max(worst, kernel_mismatch(oracle::kernel_by_quadrature(fam, qx, qy), kernel(fam, qx, qy)));
            }
            out.push_back({"kernel_" + std::string(to_string(fam)) + "_u=" + std::to_string(u).substr(0, 3), worst,
                           kKernelTolerance});
        }
    }
    return out;
}

struct EnergyCase {
    std::string name;
    Channel channel;
    Tensor3 D;
    DielectricPair pair;
    SinusoidalProfile profile;
    GeometryPoint point;
};

inline std::vector<EnergyCase> energy_cases() {
    using std::numbers::pi;
    return {
        {"tilted_dipole_r0.5", Channel::classical, DipoleCorrelation::from_classical({1.0, pi / 4, 0.0}).matrix(),
         DielectricPair::from_ratio(0.5), {0.01, 2.0}, {0.6, 0.0, 1.0}},
        {"conductor_in_plane", Channel::classical, DipoleCorrelation::from_classical({1.0, pi / 2, 0.3}).matrix(),
         DielectricPair::perfect_conductor(), {0.01, 2.7}, {0.1, 0.0, 1.0}},
        {"uniaxial_r1.3", Channel::vdw, uniaxial_correlation(1.0, 0.6, 1.0, 0.5).matrix(),
         DielectricPair::from_ratio(1.3), {0.01, 1.0}, {0.4, 0.0, 1.0}},
        {"isotropic_r5", Channel::vdw, isotropic_correlation(1.0).matrix(), DielectricPair::from_ratio(5.0),
         {0.017, 1.36}, {0.2, 0.3, 1.7}},
        {"dipole_eps2_7", Channel::classical, DipoleCorrelation::from_classical({1.0, 2.2, 4.0}).matrix(),
         DielectricPair(2.0, 7.0), {0.006, 2.4}, {0.7, -0.2, 0.6}},
    };
}

/// Two checks per case: the full energy and its first-order part.
inline std::vector<Check> energy_checks() {
    std::vector<Check> out;
    for (const auto& c : energy_cases()) {
        const auto fd = oracle::energy_by_finite_difference(c.channel, c.D, c.pair, c.profile, c.point);
        const double e0 = u0(c.channel, c.D, c.pair, c.point.z0()).value;
        const double e1 = u1_sinusoidal(c.channel, c.D, c.pair, c.profile, c.point).value;
        out.push_back({"energy_total_" + c.name, std::abs(fd.total.value - (e0 + e1)) / std::abs(e0 + e1),
                       kEnergyTolerance});
        out.push_back({"energy_first_order_" + c.name, std::abs(fd.first - e1) / std::abs(e1), kEnergyTolerance});
    }
    return out;
}

inline std::vector<Check> run_all() {
    auto out = kernel_checks();
    auto e = energy_checks();
    out.insert(out.end(), e.begin(), e.end());
    return out;
}

} // namespace latvdw::verify
