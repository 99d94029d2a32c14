#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "latvdw/errors.hpp"

namespace latvdw {

/// Plane-wave component of a height profile: h(r) contains amplitude * exp(i q.r).
struct FourierMode {
    double qx;
    double qy;
    std::complex<double> amplitude;
};

/// h(x, y) = a cos(k x) with k = 2 pi / lambda.
class SinusoidalProfile {
  public:
    SinusoidalProfile(double a, double lambda) : a_(a), lambda_(lambda) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw ArgumentError("corrugation amplitude must be finite and non-negative, got " + std::to_string(a));
        }
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
            throw ArgumentError("corrugation period must be finite and positive, got " + std::to_string(lambda));
        }
    }

    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double k() const { return 2.0 * std::numbers::pi / lambda_; }

  private:
    double a_;
    double lambda_;
};

/// Perturbative validity of a profile at a given particle height.
struct Validity {
    double amplitude_over_z0 = 0.0;
    [[nodiscard]] bool ok() const { return amplitude_over_z0 <= 0.02; }
    [[nodiscard]] bool marginal() const { return amplitude_over_z0 > 0.02 && amplitude_over_z0 <= 0.1; }
    [[nodiscard]] bool invalid() const { return amplitude_over_z0 > 0.1; }
    [[nodiscard]] const char* label() const { return invalid() ? "invalid" : (marginal() ? "marginal" : "ok"); }
};

inline Validity validity(double max_height, double z0) { return Validity{max_height / z0}; }

/// Finite discrete spectrum h(r) = sum_m c_m exp(i q_m . r). The spectrum is closed
/// under q -> -q with conjugate amplitudes, so h is real.
///
/// In the continuum convention h~(q) = int d^2r h(r) exp(-i q.r), the profile is
/// h~(q) = (2 pi)^2 sum_m c_m delta(q - q_m); consumers only ever see the c_m.
class FourierProfile {
  public:
    FourierProfile() = default;

    /// Explicit mode list; every mode must have its conjugate partner present.
    explicit FourierProfile(std::span<const FourierMode> modes) {
        for (const auto& m : modes) {
            add(m);
        }
        check_conjugate_closed();
    }

    /// Each given mode is added together with its conjugate partner.
    static FourierProfile from_half_spectrum(std::span<const FourierMode> modes) {
        FourierProfile p;
        for (const auto& m : modes) {
            p.add(m);
            p.add({-m.qx, -m.qy, std::conj(m.amplitude)});
        }
        return p;
    }

    static FourierProfile from(const SinusoidalProfile& s) {
        FourierProfile p;
        if (s.a() > 0.0) {
            p.add({s.k(), 0.0, 0.5 * s.a()});
            p.add({-s.k(), 0.0, 0.5 * s.a()});
        }
        return p;
    }

    [[nodiscard]] const std::vector<FourierMode>& modes() const { return modes_; }
    [[nodiscard]] bool empty() const { return modes_.empty(); }

    /// Bound on max |h|.
    [[nodiscard]] double amplitude_bound() const {
        double s = 0.0;
        for (const auto& m : modes_) {
            s += std::abs(m.amplitude);
        }
        return s;
    }

    friend FourierProfile operator+(const FourierProfile& a, const FourierProfile& b) {
        FourierProfile r = a;
        for (const auto& m : b.modes_) {
            r.add(m);
        }
        return r;
    }

  private:
    static bool same_q(double ax, double ay, double bx, double by) {
        const double scale = std::max({std::abs(ax), std::abs(ay), std::abs(bx), std::abs(by)});
        return std::abs(ax - bx) <= 1e-12 * scale && std::abs(ay - by) <= 1e-12 * scale;
    }

    void add(const FourierMode& m) {
        if (!std::isfinite(m.qx) || !std::isfinite(m.qy) || !std::isfinite(m.amplitude.real()) ||
            !std::isfinite(m.amplitude.imag())) {
            throw ArgumentError("Fourier mode entries must be finite");
        }
        if (m.qx == 0.0 && m.qy == 0.0) {
            throw ArgumentError("Fourier mode at q = 0 shifts the mean plane and is not a corrugation");
        }
        if (m.amplitude == 0.0) {
            return;
        }
        for (auto& e : modes_) {
            if (same_q(e.qx, e.qy, m.qx, m.qy)) {
                e.amplitude += m.amplitude;
                return;
            }
        }
        modes_.push_back(m);
    }

    void check_conjugate_closed() const {
        for (const auto& m : modes_) {
            bool found = false;
            for (const auto& p : modes_) {
                if (same_q(p.qx, p.qy, -m.qx, -m.qy)) {
                    const double tol = 1e-12 * std::max(std::abs(m.amplitude), std::abs(p.amplitude));
                    found = std::abs(p.amplitude - std::conj(m.amplitude)) <= tol;
                    break;
                }
            }
            if (!found) {
                throw ArgumentError("Fourier mode at (" + std::to_string(m.qx) + ", " + std::to_string(m.qy) +
                                    ") lacks a conjugate partner at -q; profile would not be real");
            }
        }
    }

    std::vector<FourierMode> modes_;
};

/// sum_m c_m exp(i q_m . r), complex so callers can inspect the imaginary residue.
inline std::complex<double> mode_sum(const FourierProfile& p, double x, double y) {
    std::complex<double> s{};
    for (const auto& m : p.modes()) {
        s += m.amplitude * std::polar(1.0, m.qx * x + m.qy * y);
    }
    return s;
}

inline double height(const FourierProfile& p, double x, double y) { return mode_sum(p, x, y).real(); }

inline double height(const SinusoidalProfile& s, double x, double /*y*/ = 0.0) {
    return s.a() * std::cos(s.k() * x);
}

/// Discrete weight c at q, 0 off the spectrum.
inline std::complex<double> fourier_amplitude(const FourierProfile& p, double qx, double qy) {
    for (const auto& m : p.modes()) {
        const double scale = std::max({std::abs(m.qx), std::abs(m.qy), std::abs(qx), std::abs(qy)});
        if (std::abs(m.qx - qx) <= 1e-12 * scale && std::abs(m.qy - qy) <= 1e-12 * scale) {
            return m.amplitude;
        }
    }
    return {};
}

inline std::complex<double> fourier_amplitude(const SinusoidalProfile& s, double qx, double qy) {
    return fourier_amplitude(FourierProfile::from(s), qx, qy);
}

} // namespace latvdw
