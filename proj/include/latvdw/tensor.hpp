#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

namespace latvdw {

using Vec3 = std::array<double, 3>;

struct Vec2 {
    double x;
    double y;
};

/// Dense real 3x3 matrix; used for dipole products <d_i d_j> and polarizabilities.
class Tensor3 {
  public:
    constexpr Tensor3() = default;
    constexpr explicit Tensor3(const std::array<double, 9>& rowmajor) : m_(rowmajor) {}

    static constexpr Tensor3 diagonal(double xx, double yy, double zz) {
        Tensor3 t;
        t(0, 0) = xx;
        t(1, 1) = yy;
        t(2, 2) = zz;
        return t;
    }
    static constexpr Tensor3 identity(double s = 1.0) { return diagonal(s, s, s); }
    static constexpr Tensor3 outer(const Vec3& a, const Vec3& b) {
        Tensor3 t;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                t(i, j) = a[i] * b[j];
            }
        }
        return t;
    }

    constexpr double& operator()(int i, int j) { return m_[3 * i + j]; }
    constexpr double operator()(int i, int j) const { return m_[3 * i + j]; }

    [[nodiscard]] constexpr double trace() const { return m_[0] + m_[4] + m_[8]; }
    [[nodiscard]] constexpr const std::array<double, 9>& data() const { return m_; }

    [[nodiscard]] double max_abs() const {
        double r = 0.0;
        for (double v : m_) {
            r = std::max(r, std::abs(v));
        }
        return r;
    }

    [[nodiscard]] bool is_symmetric(double rel_tol = 1e-12) const {
        const double scale = std::max(max_abs(), 1e-300);
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) {
                    return false;
                }
            }
        }
        return true;
    }

    [[nodiscard]] constexpr Tensor3 transposed() const {
        Tensor3 t;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                t(i, j) = (*this)(j, i);
            }
        }
        return t;
    }

    constexpr Tensor3& operator+=(const Tensor3& o) {
        for (int i = 0; i < 9; ++i) {
            m_[i] += o.m_[i];
        }
        return *this;
    }
    constexpr Tensor3& operator*=(double s) {
        for (double& v : m_) {
            v *= s;
        }
        return *this;
    }
    friend constexpr Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend constexpr Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
    friend constexpr Tensor3 operator*(double s, Tensor3 a) { return a *= s; }
    friend constexpr Tensor3 operator*(const Tensor3& a, const Tensor3& b) {
        Tensor3 t;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) {
                    s += a(i, k) * b(k, j);
                }
                t(i, j) = s;
            }
        }
        return t;
    }

  private:
    std::array<double, 9> m_{};
};

/// Eigenvalues of the symmetric part of t, ascending (cyclic Jacobi sweeps).
inline std::array<double, 3> symmetric_eigenvalues(const Tensor3& t) {
    double a[3][3];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            a[i][j] = 0.5 * (t(i, j) + t(j, i));
        }
    }
    for (int sweep = 0; sweep < 50; ++sweep) {
        const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if (off == 0.0) {
            break;
        }
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) {
                    continue;
                }
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double tt = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace latvdw
