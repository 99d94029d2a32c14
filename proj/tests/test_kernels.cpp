#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "latvdw/kernels.hpp"
#include "latvdw/numerics.hpp"

using namespace latvdw;
constexpr double pi = std::numbers::pi;

TEST(Kernel, VanishingEntriesOnAxes) {
    for (double u : {0.3, 2.0, 7.0}) {
        const auto c = kernel(KernelFamily::cond, u, 0.0);
        EXPECT_EQ(c.xy, 0.0);
        EXPECT_EQ(c.yz_im, 0.0);
        const auto d = kernel(KernelFamily::diel, 0.0, u);
        EXPECT_EQ(d.xz_im, 0.0);
        EXPECT_EQ(d.xy, 0.0);
    }
}

TEST(Kernel, CondZzAtTwo) {
    const double u = 2.0;
    const double k2 = std::cyl_bessel_k(2.0, u);
    const double k3 = std::cyl_bessel_k(3.0, u);
    EXPECT_NEAR(kernel(KernelFamily::cond, u, 0.0).zz, (2 * u * u + 3 * std::pow(u, 4) / 8) * k2 + u * u * u / 4 * k3,
                1e-12);
}

TEST(Kernel, SymmetricAccessAndPhases) {
    const auto m = kernel(KernelFamily::diel, 0.8, -1.1);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_EQ(m(i, j), m(j, i));
        }
    }
    EXPECT_EQ(m(0, 0).imag(), 0.0);
    EXPECT_EQ(m(0, 2).real(), 0.0);
    EXPECT_EQ(m(1, 2).real(), 0.0);
}

TEST(Kernel, SwapSymmetryBetweenAxes) {
    for (auto fam : {KernelFamily::cond, KernelFamily::diel}) {
        const auto a = kernel(fam, 1.7, 0.4);
        const auto b = kernel(fam, 0.4, 1.7);
        EXPECT_NEAR(a.xx, b.yy, 1e-14);
        EXPECT_NEAR(a.zz, b.zz, 1e-14);
        EXPECT_NEAR(a.xz_im, b.yz_im, 1e-14);
    }
}

TEST(Kernel, ReducesToRadialAlongX) {
    for (auto fam : {KernelFamily::cond, KernelFamily::diel}) {
        for (double u : {0.2, 1.0, 2.5, 9.0}) {
            const auto m = kernel(fam, u, 0.0);
            const auto r = radial(fam, u);
            EXPECT_NEAR(m.xx, 0.375 * r.xx, 1e-13 * std::abs(r.xx) + 1e-300);
            EXPECT_NEAR(m.yy, 0.375 * r.yy, 1e-13 * std::abs(r.yy) + 1e-300);
            EXPECT_NEAR(m.zz, 0.375 * r.zz, 1e-13 * std::abs(r.zz) + 1e-300);
            EXPECT_NEAR(m.xz_im, 0.375 * r.xz, 1e-13 * std::abs(r.xz) + 1e-300);
            const auto n = kernel(fam, -u, 0.0);
            EXPECT_NEAR(n.xz_im, -0.375 * r.xz, 1e-13 * std::abs(r.xz) + 1e-300);
        }
    }
}

TEST(Kernel, RejectsZeroMomentum) {
    EXPECT_THROW(kernel(KernelFamily::cond, 0.0, 0.0), DomainError);
}

TEST(Radial, CondYyPositive) {
    for (double u : numerics::logspace(1e-3, 40.0, 200)) {
        EXPECT_GT(radial(KernelFamily::cond, u).yy, 0.0);
    }
}

TEST(Radial, SmallArgumentLimits) {
    const double u = 1e-5;
    const auto c = radial(KernelFamily::cond, u);
    const auto d = radial(KernelFamily::diel, u);
    EXPECT_NEAR(c.xx, 8.0, 1e-6);
    EXPECT_NEAR(c.yy, 8.0, 1e-6);
    EXPECT_NEAR(c.zz, 16.0, 1e-6);
    EXPECT_NEAR(c.xz, 0.0, 1e-4);
    EXPECT_NEAR(d.xx, 8.0, 1e-6);
    EXPECT_NEAR(d.yy, 8.0, 1e-6);
    EXPECT_NEAR(d.zz, 16.0, 1e-6);
    EXPECT_NEAR(d.xz, 0.0, 1e-4);
}

TEST(Radial, DecaysAtLargeArgument) {
    for (auto fam : {KernelFamily::cond, KernelFamily::diel}) {
        const auto r = radial(fam, 40.0);
        EXPECT_LT(std::abs(r.xx), 1e-8);
        EXPECT_LT(std::abs(r.yy), 1e-8);
        EXPECT_LT(std::abs(r.zz), 1e-8);
        EXPECT_LT(std::abs(r.xz), 1e-8);
    }
}

TEST(Radial, RejectsNonPositive) {
    EXPECT_THROW(radial(KernelFamily::diel, 0.0), DomainError);
    EXPECT_THROW(radial(KernelFamily::diel, -2.0), DomainError);
}

TEST(SignRoot, Values) {
    const auto cxx = radial_sign_root(KernelFamily::cond, RadialComponent::xx);
    ASSERT_TRUE(cxx);
    EXPECT_NEAR(cxx->u / (2 * pi / std::exp(1.0)), 1.0, 5e-3);
    EXPECT_NEAR(cxx->lambda_over_z0, 2 * pi / cxx->u, 1e-15);
    EXPECT_FALSE(radial_sign_root(KernelFamily::diel, RadialComponent::xx));
    const auto dzz = radial_sign_root(KernelFamily::diel, RadialComponent::zz);
    ASSERT_TRUE(dzz);
    EXPECT_NEAR(dzz->u, 3.6, 0.05);
    const auto dxz = radial_sign_root(KernelFamily::diel, RadialComponent::xz);
    ASSERT_TRUE(dxz);
    EXPECT_NEAR(dxz->u, 2.28, 0.05);
    const auto dyy = radial_sign_root(KernelFamily::diel, RadialComponent::yy);
    ASSERT_TRUE(dyy);
    EXPECT_NEAR(dyy->u, 5.2, 0.05);
    EXPECT_FALSE(radial_sign_root(KernelFamily::cond, RadialComponent::yy));
}

TEST(SignRoot, IsAZeroOfTheKernel) {
    for (auto fam : {KernelFamily::cond, KernelFamily::diel}) {
        for (auto c : kRadialComponents) {
            if (auto r = radial_sign_root(fam, c)) {
                const double lo = radial_component(radial(fam, r->u * (1 - 1e-6)), c);
                const double hi = radial_component(radial(fam, r->u * (1 + 1e-6)), c);
                EXPECT_LT(lo * hi, 0.0);
            }
        }
    }
}
