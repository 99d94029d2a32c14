#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "latvdw/greens.hpp"

using namespace latvdw;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

FourierProfile oblique_profile() {
    const std::vector<FourierMode> half{{2.0, 0.5, {0.01, 0.005}}};
    return FourierProfile::from_half_spectrum(half);
}

cd d_dz(const std::function<cd(double)>& f, double z, double h) { return (f(z + h) - f(z - h)) / (2 * h); }
cd d2_dz2(const std::function<cd(double)>& f, double z, double h) {
    return (f(z + h) - 2.0 * f(z) + f(z - h)) / (h * h);
}

} // namespace

TEST(G0Fourier, EqualMediaGiveFreeSpace) {
    const DielectricPair pair(2.3, 2.3);
    const GeometryPoint src(0.2, -0.4, 0.9);
    for (double z : {0.1, 0.9, 2.0}) {
        const Vec2 q{0.7, -1.2};
        const double aq = std::hypot(q.x, q.y);
        const cd ref = 2 * pi / (2.3 * aq) * std::exp(-aq * std::abs(z - 0.9)) *
                       std::polar(1.0, -(q.x * src.x0() + q.y * src.y0()));
        EXPECT_LT(std::abs(g0_fourier(q, z, src, pair).value - ref), 1e-15);
    }
}

TEST(G0Fourier, ContinuityAndFluxJump) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> qd(-3, 3), zd(0.1, 2), ed(0.2, 20);
    for (int k = 0; k < 40; ++k) {
        const Vec2 q{qd(rng), qd(rng)};
        const GeometryPoint src(qd(rng), qd(rng), zd(rng));
        const DielectricPair pair(ed(rng), ed(rng));
        const cd above = g0_fourier(q, 0.0, src, pair, Branch::above).value;
        const cd below = g0_fourier(q, 0.0, src, pair, Branch::below).value;
        EXPECT_LE(std::abs(above - below), 1e-13 * std::abs(above));
        const auto fa = [&](double z) { return g0_fourier(q, z, src, pair, Branch::above).value; };
        const auto fb = [&](double z) { return g0_fourier(q, z, src, pair, Branch::below).value; };
        const cd flux_a = pair.eps2() * d_dz(fa, 0.0, 1e-5);
        const cd flux_b = pair.eps1() * d_dz(fb, 0.0, 1e-5);
        EXPECT_LE(std::abs(flux_a - flux_b), 1e-6 * std::abs(flux_a));
    }
    EXPECT_EQ(g0_fourier({0.3, 0.0}, -0.5, GeometryPoint(0, 0, 1), DielectricPair(2, 1)).branch, Branch::below);
    EXPECT_THROW(g0_fourier({0.0, 0.0}, 0.5, GeometryPoint(0, 0, 1), DielectricPair(2, 1)), DomainError);
}

TEST(G0Real, Limits) {
    const GeometryPoint r(0.3, -0.1, 1.2);
    const GeometryPoint rp(-0.2, 0.4, 0.7);
    const double d = std::sqrt(0.25 + 0.25 + 0.25);
    const double di = std::sqrt(0.25 + 0.25 + 1.9 * 1.9);
    EXPECT_NEAR(g0_real(r, rp, DielectricPair::perfect_conductor()), 1 / d - 1 / di, 1e-7);
    EXPECT_NEAR(g0_real(r, rp, DielectricPair(3.0, 3.0)), 1 / (3.0 * d), 1e-15);
    EXPECT_THROW(g0_real(r, r, DielectricPair(2, 1)), DomainError);
}

TEST(G0Real, MatchesNumericalInverseTransform) {
    const DielectricPair pair(4.0, 1.5);
    const GeometryPoint src(0.1, -0.3, 0.6);
    const GeometryPoint r(0.5, -0.5, 1.3);
    // (2 pi)^-2 int d^2q exp(i q.r) g0(q): polar grid, Simpson in |q|, trapezoid in angle.
    const int nq = 20000;
    const int na = 64;
    const double qmax = 70.0;
    const double hq = qmax / nq;
    cd sum{};
    for (int i = 0; i <= nq; ++i) {
        const double w = (i == 0 || i == nq) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        // q g0 has a finite limit at the origin
        const double q = i == 0 ? 1e-12 : i * hq;
        cd ring{};
        for (int j = 0; j < na; ++j) {
            const double a = 2 * pi * (j + 0.5) / na;
            const Vec2 qv{q * std::cos(a), q * std::sin(a)};
            ring += g0_fourier(qv, r.z0(), src, pair).value * std::polar(1.0, qv.x * r.x0() + qv.y * r.y0());
        }
        sum += w * q * ring * (2 * pi / na);
    }
    const double numeric = (sum * (hq / 3.0)).real() / (4 * pi * pi);
    const double exact = g0_real(r, src, pair);
    EXPECT_NEAR(numeric / exact, 1.0, 1e-4);
}

TEST(G1Fourier, VanishesForFlatProfileOrEqualMedia) {
    const GeometryPoint src(0.0, 0.0, 1.0);
    const Vec2 q{0.4, 0.9};
    EXPECT_EQ(g1_fourier(q, 0.5, src, DielectricPair(3, 1), FourierProfile{}).value, cd{});
    EXPECT_EQ(std::abs(g1_fourier(q, 0.5, src, DielectricPair(2, 2), oblique_profile()).value), 0.0);
}

TEST(G1Fourier, FirstOrderInterfaceConditions) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> qd(-3, 3), zd(0.2, 1.5), ed(0.3, 10);
    const FourierProfile prof = oblique_profile();
    for (int k = 0; k < 30; ++k) {
        const Vec2 q{qd(rng), qd(rng)};
        const GeometryPoint src(qd(rng), qd(rng), zd(rng));
        const DielectricPair pair(ed(rng), ed(rng));
        const double e1 = pair.eps1();
        const double e2 = pair.eps2();
        const auto g1a = [&](double z) { return g1_fourier(q, z, src, pair, prof, Branch::above).value; };
        const auto g1b = [&](double z) { return g1_fourier(q, z, src, pair, prof, Branch::below).value; };

        cd jump_rhs{};
        cd flux_rhs{};
        for (const auto& m : prof.modes()) {
            const Vec2 qp{q.x - m.qx, q.y - m.qy};
            const auto g0a = [&](double z) { return g0_fourier(qp, z, src, pair, Branch::above).value; };
            const auto g0b = [&](double z) { return g0_fourier(qp, z, src, pair, Branch::below).value; };
            jump_rhs -= m.amplitude * (d_dz(g0a, 0.0, 1e-5) - d_dz(g0b, 0.0, 1e-5));
            flux_rhs -= m.amplitude * (e2 * d2_dz2(g0a, 0.0, 1e-4) - e1 * d2_dz2(g0b, 0.0, 1e-4));
            flux_rhs -= (e2 - e1) * m.amplitude * (m.qx * qp.x + m.qy * qp.y) * g0a(0.0);
        }
        const cd jump = g1a(0.0) - g1b(0.0);
        const cd flux = e2 * d_dz(g1a, 0.0, 1e-5) - e1 * d_dz(g1b, 0.0, 1e-5);
        EXPECT_LE(std::abs(jump - jump_rhs), 1e-5 * std::abs(jump_rhs)) << "sample " << k;
        EXPECT_LE(std::abs(flux - flux_rhs), 1e-5 * std::abs(flux_rhs)) << "sample " << k;
    }
}

TEST(G1Fourier, ExponentialDecayInZ) {
    const FourierProfile prof = oblique_profile();
    const GeometryPoint src(0.1, 0.2, 0.8);
    const DielectricPair pair(5.0, 1.2);
    const Vec2 q{1.1, -0.6};
    const double aq = std::hypot(q.x, q.y);
    const double ref = std::abs(g1_fourier(q, 0.0, src, pair, prof, Branch::above).value);
    for (double z : {0.5, 1.0, 3.0, 8.0}) {
        EXPECT_NEAR(std::abs(g1_fourier(q, z, src, pair, prof).value) * std::exp(aq * z), ref, 1e-12 * ref);
        EXPECT_NEAR(std::abs(g1_fourier(q, -z, src, pair, prof).value) * std::exp(aq * z),
                    std::abs(g1_fourier(q, 0.0, src, pair, prof, Branch::below).value), 1e-12 * ref);
    }
}

TEST(G1Fourier, SingularOnModes) {
    const FourierProfile prof = oblique_profile();
    EXPECT_THROW(g1_fourier({2.0, 0.5}, 0.3, GeometryPoint(0, 0, 1), DielectricPair(2, 1), prof), DomainError);
    EXPECT_THROW(g1_fourier({0.0, 0.0}, 0.3, GeometryPoint(0, 0, 1), DielectricPair(2, 1), prof), DomainError);
}

TEST(GH, FlatProfileIsImageOnly) {
    const GeometryPoint r(0.3, 0.1, 0.8);
    const GeometryPoint rp(-0.2, 0.4, 0.7);
    const DielectricPair pair(3, 1);
    EXPECT_EQ(gh_homogeneous(r, rp, pair, FourierProfile::from(SinusoidalProfile(0.0, 1.0))),
              image_term(r, rp, pair));
}

TEST(GH, Reciprocity) {
    const FourierProfile prof = oblique_profile() + FourierProfile::from(SinusoidalProfile(0.02, 1.7));
    const DielectricPair pair(6.0, 1.4);
    const GeometryPoint r(0.3, 0.1, 0.8);
    const GeometryPoint rp(-0.2, 0.4, 0.5);
    const double a = gh_homogeneous(r, rp, pair, prof);
    const double b = gh_homogeneous(rp, r, pair, prof);
    EXPECT_NEAR(a, b, 1e-10 * std::abs(a));
    const double g1a = g1_real(r, rp, pair, prof);
    EXPECT_NEAR(g1a, g1_real(rp, r, pair, prof), 1e-10 * std::abs(g1a));
}

TEST(GH, FirstOrderMatchesDenseCartesianTrapezoid) {
    const FourierProfile prof = oblique_profile();
    const DielectricPair pair(3.0, 1.0);
    const GeometryPoint r(0.3, 0.1, 0.8);
    const GeometryPoint rp(-0.2, 0.4, 0.7);
    const double h = 0.02;
    const int n = 2000; // offset nodes covering [-20, 20]^2
    cd sum{};
    for (int i = 0; i < n; ++i) {
        const double qx = -20.0 + (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double qy = -20.0 + (j + 0.5) * h;
            const Vec2 q{qx, qy};
            sum += g1_fourier(q, r.z0(), rp, pair, prof).value * std::polar(1.0, qx * r.x0() + qy * r.y0());
        }
    }
    const double dense = (sum * h * h).real() / (4 * pi * pi);
    const double elliptic = g1_real(r, rp, pair, prof);
    EXPECT_NEAR(dense / elliptic, 1.0, 1e-4);
    EXPECT_NEAR(gh_homogeneous(r, rp, pair, prof), image_term(r, rp, pair) + elliptic, 1e-15);
}

