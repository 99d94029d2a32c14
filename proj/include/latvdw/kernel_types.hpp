#pragma once

#include <complex>
#include <string_view>

#include "latvdw/errors.hpp"

namespace latvdw {

/// cond: the part surviving for a perfectly conducting medium; diel: the extra part
/// weighted by eps2/eps1.
enum class KernelFamily { cond, diel };

inline std::string_view to_string(KernelFamily f) { return f == KernelFamily::cond ? "cond" : "diel"; }

/// Symmetric kernel matrix at one transfer momentum. xx, yy, zz, xy are real;
/// xz and yz are purely imaginary and stored by their imaginary parts.
struct KernelMatrix {
    double xx = 0.0;
    double yy = 0.0;
    double zz = 0.0;
    double xy = 0.0;
    double xz_im = 0.0;
    double yz_im = 0.0;

    [[nodiscard]] std::complex<double> operator()(int i, int j) const {
        if (i > j) {
            return (*this)(j, i);
        }
        switch (3 * i + j) {
        case 0:
            return xx;
        case 1:
            return xy;
        case 2:
            return {0.0, xz_im};
        case 4:
            return yy;
        case 5:
            return {0.0, yz_im};
        case 8:
            return zz;
        default:
            throw ArgumentError("kernel matrix index out of range");
        }
    }
};

} // namespace latvdw
