#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "latvdw/errors.hpp"

namespace latvdw::numerics {

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {a};
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    v.back() = b;
    return v;
}

inline std::vector<double> logspace(double a, double b, std::size_t n) {
    if (!(a > 0.0 && b > 0.0)) {
        throw ArgumentError("logspace endpoints must be positive");
    }
    auto v = linspace(std::log(a), std::log(b), n);
    for (double& x : v) {
        x = std::exp(x);
    }
    if (n > 1) {
        v.front() = a;
        v.back() = b;
    }
    return v;
}

/// Bisection on a sign-changing bracket; stops when the bracket is below
/// rel_tol * |x| (or abs_tol).
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-12, double abs_tol = 1e-300) {
    double flo = f(lo);
    if (flo == 0.0) {
        return lo;
    }
    const double fhi = f(hi);
    if (fhi == 0.0) {
        return hi;
    }
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw NumericalError("bisection bracket does not change sign");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= std::max(rel_tol * std::abs(mid), abs_tol) || mid == lo || mid == hi) {
            return mid;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return mid;
        }
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// All sign-change roots of f on the sample grid, each refined by bisection.
template <class F>
std::vector<double> bracket_roots(F&& f, const std::vector<double>& grid, double rel_tol = 1e-12) {
    std::vector<double> roots;
    if (grid.size() < 2) {
        return roots;
    }
    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        if (prev == 0.0) {
            roots.push_back(grid[i - 1]);
        } else if (cur != 0.0 && (prev > 0.0) != (cur > 0.0)) {
            roots.push_back(bisect(f, grid[i - 1], grid[i], rel_tol));
        }
        prev = cur;
    }
    return roots;
}

/// Golden-section search for a minimum of a unimodal f on [a, b].
template <class F>
std::pair<double, double> golden_section_minimize(F&& f, double a, double b, double tol = 1e-12) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (std::abs(b - a) > tol * (std::abs(c) + std::abs(d)) + 1e-300) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

} // namespace latvdw::numerics
