#pragma once

#include <cmath>
#include <string>

#include "latvdw/errors.hpp"

namespace latvdw {

/// Vacuum permittivity in F/m, used only for SI output.
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;

/// Permittivity standing in for a perfect conductor (eps1 -> infinity).
inline constexpr double kConductorPermittivity = 1e8;

/// Relative permittivities of the corrugated half-space (eps1) and of the host
/// medium that contains the particle (eps2).
class DielectricPair {
  public:
    DielectricPair(double eps1, double eps2) : eps1_(eps1), eps2_(eps2) {
        if (!(eps1 > 0.0) || !(eps2 > 0.0) || !std::isfinite(eps1) || !std::isfinite(eps2)) {
            throw ArgumentError("permittivities must be finite and positive (eps1=" + std::to_string(eps1) +
                                ", eps2=" + std::to_string(eps2) + ")");
        }
    }

    /// Perfectly conducting corrugated medium facing a host of permittivity eps2.
    static DielectricPair perfect_conductor(double eps2 = 1.0) { return {kConductorPermittivity, eps2}; }

    /// Pair with eps1 = 1 and eps2 = ratio; every lateral-regime quantity depends only on the ratio.
    static DielectricPair from_ratio(double ratio) { return {1.0, ratio}; }

    [[nodiscard]] double eps1() const { return eps1_; }
    [[nodiscard]] double eps2() const { return eps2_; }
    /// eps2 / eps1
    [[nodiscard]] double ratio() const { return eps2_ / eps1_; }

  private:
    double eps1_;
    double eps2_;
};

/// Image strength (eps1 - eps2) / (eps1 + eps2), in (-1, 1).
inline double contrast(const DielectricPair& pair) {
    return (pair.eps1() - pair.eps2()) / (pair.eps1() + pair.eps2());
}

/// eps1^2 / (eps2 (eps1 + eps2)^2), the common factor of the first-order energy.
inline double first_order_prefactor(const DielectricPair& pair) {
    const double s = pair.eps1() + pair.eps2();
    return pair.eps1() * pair.eps1() / (pair.eps2() * s * s);
}

/// Particle position; z0 is the height above the mean interface plane.
class GeometryPoint {
  public:
    GeometryPoint(double x0, double y0, double z0) : x0_(x0), y0_(y0), z0_(z0) {
        if (!(z0 > 0.0) || !std::isfinite(z0) || !std::isfinite(x0) || !std::isfinite(y0)) {
            throw ArgumentError("particle height z0 must be finite and positive, got " + std::to_string(z0));
        }
    }

    [[nodiscard]] double x0() const { return x0_; }
    [[nodiscard]] double y0() const { return y0_; }
    [[nodiscard]] double z0() const { return z0_; }

  private:
    double x0_;
    double y0_;
    double z0_;
};

} // namespace latvdw
