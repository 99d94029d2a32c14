#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "latvdw/errors.hpp"
#include "latvdw/tensor.hpp"

namespace latvdw {

/// Unit vector with polar angle theta measured from z and azimuth phi measured from x.
inline Vec3 spherical_direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Permanent dipole of fixed strength and orientation.
class ClassicalDipole {
  public:
    ClassicalDipole(double magnitude, double theta, double phi) : magnitude_(magnitude), theta_(theta), phi_(phi) {
        if (!(magnitude > 0.0) || !std::isfinite(magnitude)) {
            throw ArgumentError("dipole magnitude must be finite and positive, got " + std::to_string(magnitude));
        }
        if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
            throw ArgumentError("dipole polar angle must lie in [0, pi], got " + std::to_string(theta));
        }
        if (!std::isfinite(phi)) {
            throw ArgumentError("dipole azimuth must be finite");
        }
    }

    [[nodiscard]] double magnitude() const { return magnitude_; }
    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] double phi() const { return phi_; }

  private:
    double magnitude_;
    double theta_;
    double phi_;
};

inline Vec3 classical_components(const ClassicalDipole& d) {
    Vec3 n = spherical_direction(d.theta(), d.phi());
    for (double& c : n) {
        c *= d.magnitude();
    }
    return n;
}

/// Positive scalar carrying the host-medium dependence of the polarizability.
class EmbeddingFactor {
  public:
    explicit EmbeddingFactor(double f = 1.0) : f_(f) {
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw ArgumentError("embedding factor must be finite and positive, got " + std::to_string(f));
        }
    }
    [[nodiscard]] double value() const { return f_; }

  private:
    double f_;
};

/// Symmetric positive semidefinite second-moment tensor <d_i d_j>.
class DipoleCorrelation {
  public:
    explicit DipoleCorrelation(const Tensor3& m) : m_(m) {
        for (double v : m.data()) {
            if (!std::isfinite(v)) {
                throw ArgumentError("dipole correlation entries must be finite");
            }
        }
        if (!m.is_symmetric(1e-10)) {
            throw ArgumentError("dipole correlation must be symmetric");
        }
        for (int i = 0; i < 3; ++i) {
            if (m(i, i) < 0.0) {
                throw ArgumentError("dipole correlation diagonal entries must be non-negative");
            }
        }
        const auto ev = symmetric_eigenvalues(m);
        if (ev[0] < -1e-12 * std::max(m.max_abs(), 1e-300)) {
            throw ArgumentError("dipole correlation must be positive semidefinite (smallest eigenvalue " +
                                std::to_string(ev[0]) + ")");
        }
    }

    /// Outer product d d^T of a classical dipole.
    static DipoleCorrelation from_classical(const ClassicalDipole& d) {
        const Vec3 v = classical_components(d);
        return DipoleCorrelation(Tensor3::outer(v, v));
    }

    [[nodiscard]] const Tensor3& matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

  private:
    Tensor3 m_;
};

/// Principal-frame tensor diag(dp2, dn2, dn2) with its principal axis rotated onto
/// the direction (theta, phi).
inline DipoleCorrelation uniaxial_correlation(double dp2, double dn2, double theta, double phi) {
    if (!(dn2 > 0.0) || !std::isfinite(dp2) || !std::isfinite(dn2)) {
        throw ArgumentError("uniaxial correlation needs finite dn2 > 0");
    }
    if (dn2 > dp2) {
        throw ArgumentError("uniaxial correlation needs dp2 >= dn2 (got dp2=" + std::to_string(dp2) +
                            ", dn2=" + std::to_string(dn2) + ")");
    }
    const Vec3 n = spherical_direction(theta, phi);
    return DipoleCorrelation(Tensor3::identity(dn2) + (dp2 - dn2) * Tensor3::outer(n, n));
}

inline DipoleCorrelation isotropic_correlation(double d2) {
    if (!(d2 > 0.0)) {
        throw ArgumentError("isotropic correlation needs <d^2> > 0");
    }
    return DipoleCorrelation(Tensor3::identity(d2));
}

/// One tabulated value of the bare polarizability at imaginary frequency i*xi.
struct PolarizabilitySample {
    double xi;
    Tensor3 alpha;
};

/// f * integral over xi of alpha(i xi), trapezoid rule, in units where hbar/pi = 1.
inline DipoleCorrelation correlation_from_polarizability(std::span<const PolarizabilitySample> samples,
                                                         EmbeddingFactor f) {
    if (samples.size() < 2) {
        throw ArgumentError("polarizability integral needs at least two samples, got " +
                            std::to_string(samples.size()));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].xi >= 0.0) || !std::isfinite(samples[i].xi)) {
            throw ArgumentError("polarizability sample " + std::to_string(i) + " has invalid frequency");
        }
        if (i > 0 && !(samples[i].xi > samples[i - 1].xi)) {
            throw ArgumentError("polarizability frequencies must be strictly increasing (sample " + std::to_string(i) +
                                ")");
        }
        if (!samples[i].alpha.is_symmetric(1e-10)) {
            throw ArgumentError("polarizability sample " + std::to_string(i) + " is not symmetric");
        }
    }
    Tensor3 acc;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double w = 0.5 * (samples[i].xi - samples[i - 1].xi);
        acc += w * (samples[i].alpha + samples[i - 1].alpha);
    }
    return DipoleCorrelation(f.value() * acc);
}

} // namespace latvdw
