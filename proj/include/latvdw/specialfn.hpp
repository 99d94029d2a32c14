#pragma once

// Modified Bessel functions of the second kind K_0..K_3 for real positive argument.
//
// K_0 and K_1 use the minimax rational approximations of Russon and Blair
// (Chalk River Report AECL-3461, 1969), split at x = 1, with the coefficient
// sets published in Boost.Math. K_2 and K_3 follow from the upward recurrence
//     K_{n+1}(x) = K_{n-1}(x) + (2n/x) K_n(x),
// which is stable for K because the sequence grows with n.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "latvdw/errors.hpp"

namespace latvdw {

/// Order of a K_n evaluation. Only n = 0..3 are needed anywhere in the library.
class BesselOrder {
  public:
    constexpr BesselOrder(int n) : n_(n) { // NOLINT(google-explicit-constructor)
        if (n < 0 || n > 3) {
            throw ArgumentError("Bessel order " + std::to_string(n) + " outside supported range 0..3");
        }
    }
    [[nodiscard]] constexpr int value() const { return n_; }

  private:
    int n_;
};

namespace detail {

// Coefficients in ascending powers.
template <std::size_t N>
constexpr double polyval(const std::array<double, N>& c, double x) {
    double r = c[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) {
        r = r * x + c[i];
    }
    return r;
}

inline double bessel_k0(double x) {
    static constexpr std::array<double, 6> P1{2.4708152720399552679e+03, 5.9169059852270512312e+03,
                                              4.6850901201934832188e+02, 1.1999463724910714109e+01,
                                              1.3166052564989571850e-01, 5.8599221412826100000e-04};
    static constexpr std::array<double, 3> Q1{2.1312714303849120380e+04, -2.4994418972832303646e+02, 1.0};
    static constexpr std::array<double, 5> P2{-1.6128136304458193998e+06, -3.7333769444840079748e+05,
                                              -1.7984434409411765813e+04, -2.9501657892958843865e+02,
                                              -1.6414452837299064100e+00};
    static constexpr std::array<double, 4> Q2{-1.6128136304458193998e+06, 2.9865713163054025489e+04,
                                              -2.5064972445877992730e+02, 1.0};
    static constexpr std::array<double, 10> P3{
        1.1600249425076035558e+02, 2.3444738764199315021e+03, 1.8321525870183537725e+04,
        7.1557062783764037541e+04, 1.5097646353289914539e+05, 1.7398867902565686251e+05,
        1.0577068948034021957e+05, 3.1075408980684392399e+04, 3.6832589957340267940e+03,
        1.1394980557384778174e+02};
    static constexpr std::array<double, 11> Q3{
        9.2556599177304839811e+01, 1.8821890840982713696e+03, 1.4847228371802360957e+04,
        5.8824616785857027752e+04, 1.2689839587977598727e+05, 1.5144644673520157801e+05,
        9.7418829762268075784e+04, 3.1474655750295278825e+04, 4.4329628889746408858e+03,
        2.0013443064949242491e+02, 1.0};

    if (x <= 1.0) {
        const double y = x * x;
        const double r1 = polyval(P1, y) / polyval(Q1, y);
        const double r2 = polyval(P2, y) / polyval(Q2, y);
        return r1 - std::log(x) * r2;
    }
    const double y = 1.0 / x;
    return std::exp(-x) / std::sqrt(x) * (polyval(P3, y) / polyval(Q3, y));
}

inline double bessel_k1(double x) {
    static constexpr std::array<double, 6> P1{-2.2149374878243304548e+06, 7.1938920065420586101e+05,
                                              1.7733324035147015630e+05, 7.1885382604084798576e+03,
                                              9.9991373567429309922e+01, 4.8127070456878442310e-01};
    static constexpr std::array<double, 4> Q1{-2.2149374878243304548e+06, 3.7264298672067697862e+04,
                                              -2.8143915754538725829e+02, 1.0};
    static constexpr std::array<double, 6> P2{0.0,
                                              -1.3531161492785421328e+06,
                                              -1.4758069205414222471e+05,
                                              -4.5051623763436087023e+03,
                                              -5.3103913335180275253e+01,
                                              -2.2795590826955002390e-01};
    static constexpr std::array<double, 4> Q2{-2.7062322985570842656e+06, 4.3117653211351080007e+04,
                                              -3.0507151578787595807e+02, 1.0};
    static constexpr std::array<double, 11> P3{
        2.2196792496874548962e+00, 4.4137176114230414036e+01, 3.4122953486801312910e+02,
        1.3319486433183221990e+03, 2.8590657697910288226e+03, 3.4540675585544584407e+03,
        2.3123742209168871550e+03, 8.1094256146537402173e+02, 1.3182609918569941308e+02,
        7.5584584631176030810e+00, 6.4257745859173138767e-02};
    static constexpr std::array<double, 10> Q3{
        1.7710478032601086579e+00, 3.4552228452758912848e+01, 2.5951223655579051357e+02,
        9.6929165726802648634e+02, 1.9448440788918006154e+03, 2.1181000487171943810e+03,
        1.2082692316002348638e+03, 3.3031020088765390854e+02, 3.6001069306861518855e+01, 1.0};

    if (x <= 1.0) {
        const double y = x * x;
        const double r1 = polyval(P1, y) / polyval(Q1, y);
        const double r2 = polyval(P2, y) / polyval(Q2, y);
        return (r1 + std::log(x) * r2) / x;
    }
    const double y = 1.0 / x;
    return std::exp(-x) / std::sqrt(x) * (polyval(P3, y) / polyval(Q3, y));
}

inline void require_positive_argument(double u) {
    if (!(u > 0.0)) {
        throw DomainError("modified Bessel K_n requires u > 0, got " + std::to_string(u));
    }
}

} // namespace detail

/// K_0(u) .. K_3(u) evaluated together.
struct BesselKSet {
    double k0;
    double k1;
    double k2;
    double k3;
};

inline BesselKSet bessel_k_upto3(double u) {
    detail::require_positive_argument(u);
    if (std::isinf(u)) {
        return {0.0, 0.0, 0.0, 0.0};
    }
    BesselKSet s{};
    s.k0 = detail::bessel_k0(u);
    s.k1 = detail::bessel_k1(u);
    s.k2 = s.k0 + (2.0 / u) * s.k1;
    s.k3 = s.k1 + (4.0 / u) * s.k2;
    return s;
}

/// K_n(u) for n in 0..3 and u > 0. Underflows to 0 for very large u.
inline double bessel_k(BesselOrder n, double u) {
    const BesselKSet s = bessel_k_upto3(u);
    switch (n.value()) {
    case 0:
        return s.k0;
    case 1:
        return s.k1;
    case 2:
        return s.k2;
    default:
        return s.k3;
    }
}

} // namespace latvdw
