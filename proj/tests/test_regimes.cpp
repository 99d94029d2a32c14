#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "latvdw/regimes.hpp"

using namespace latvdw;
constexpr double pi = std::numbers::pi;

namespace {

AtlasRequest phi_lambda_map(double ratio, std::size_t nl = 60, std::size_t nphi = 48) {
    AtlasRequest req{{SweepParameter::lambda_over_z0, numerics::linspace(0.05, 6.0, nl)},
                     {SweepParameter::phi, numerics::linspace(0.0, 2 * pi * (nphi - 1) / nphi, nphi)}};
    req.fixed.ratio = ratio;
    return req;
}

bool same_label(const RegimeLabel& a, const RegimeLabel& b) {
    if (a.kind != b.kind || a.x_min_over_lambda.has_value() != b.x_min_over_lambda.has_value()) {
        return false;
    }
    return !a.x_min_over_lambda || std::abs(*a.x_min_over_lambda - *b.x_min_over_lambda) < 1e-12;
}

} // namespace

TEST(Classify, Examples) {
    EXPECT_EQ(classify(PhaseDecomposition::from_bc(0, 1)).kind, RegimeKind::peak);
    EXPECT_EQ(classify(PhaseDecomposition::from_bc(0, -1)).kind, RegimeKind::valley);
    const auto l = classify(PhaseDecomposition::from_bc(1, 1));
    EXPECT_EQ(l.kind, RegimeKind::intermediate);
    EXPECT_NEAR(*l.x_min_over_lambda, 0.125, 1e-15);
    EXPECT_EQ(classify(PhaseDecomposition::from_bc(0, 0)).kind, RegimeKind::no_lateral_force);
    EXPECT_EQ(classify(PhaseDecomposition::from_bc(1e-14, 1)).kind, RegimeKind::peak);
    EXPECT_NEAR(*classify(PhaseDecomposition::from_bc(-1, 0)).x_min_over_lambda, 0.75, 1e-15);
    EXPECT_THROW(classify(PhaseDecomposition::from_bc(0, 1), 0.0), ArgumentError);
}

TEST(Classify, InvariantUnderPositiveScaling) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> th(0, pi), ph(0, 2 * pi), lam(0.1, 6), r(0.05, 5), s(1e-3, 1e3);
    for (int k = 0; k < 300; ++k) {
        const Tensor3 D = OrientationModel::uniaxial(0.6).tensor(th(rng), ph(rng));
        const DielectricPair pair = DielectricPair::from_ratio(r(rng));
        const double u = 2 * pi / lam(rng);
        const double c = s(rng);
        const auto p = bc_decomposition(D, pair, u);
        EXPECT_TRUE(same_label(classify(p), classify(bc_decomposition(c * D, pair, u))));
        EXPECT_TRUE(same_label(classify(p), classify(PhaseDecomposition::from_bc(c * p.B, c * p.C))));
    }
}

TEST(Atlas, DeterministicAcrossThreadCounts) {
    const auto req = phi_lambda_map(0.5);
    setenv("VDW_THREADS", "1", 1);
    const auto a = atlas(req);
    setenv("VDW_THREADS", "4", 1);
    const auto b = atlas(req);
    unsetenv("VDW_THREADS");
    ASSERT_EQ(a.cells.size(), b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        EXPECT_EQ(a.cells[i].decomposition.B, b.cells[i].decomposition.B);
        EXPECT_EQ(a.cells[i].decomposition.C, b.cells[i].decomposition.C);
        EXPECT_EQ(a.cells[i].boundary, b.cells[i].boundary);
    }
}

TEST(Atlas, PhiSymmetriesAtThetaHalfPi) {
    const std::size_t nphi = 48;
    const auto g = atlas(phi_lambda_map(1.2, 40, nphi));
    const std::size_t nl = g.x.values.size();
    for (std::size_t ip = 0; ip < nphi; ++ip) {
        const std::size_t shifted = (ip + nphi / 2) % nphi;
        const std::size_t mirrored = (nphi - ip) % nphi;
        for (std::size_t il = 0; il < nl; ++il) {
            EXPECT_EQ(g.at(il, ip).label.kind, g.at(il, shifted).label.kind);
            EXPECT_EQ(g.at(il, ip).label.kind, g.at(il, mirrored).label.kind);
            EXPECT_NEAR(g.at(il, ip).decomposition.C, g.at(il, mirrored).decomposition.C,
                        1e-12 * std::abs(g.at(il, ip).decomposition.A) + 1e-300);
        }
    }
}

TEST(Atlas, BoundaryCellsSitOnSignChangesOfC) {
    const auto g = atlas(phi_lambda_map(1e-8));
    const std::size_t nx = g.x.values.size();
    const std::size_t ny = g.y.values.size();
    std::size_t flagged = 0;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const auto& c = g.at(ix, iy);
            EXPECT_LE(std::abs(c.decomposition.B), 1e-12 * c.decomposition.A);
            if (ix + 1 < nx && (c.label.kind != g.at(ix + 1, iy).label.kind)) {
                EXPECT_TRUE(c.boundary);
                EXPECT_TRUE(g.at(ix + 1, iy).boundary);
            }
            flagged += c.boundary;
        }
    }
    EXPECT_GT(flagged, 0u);
}

TEST(Atlas, IsotropicBelowUnitRatioHasNoValley) {
    AtlasRequest req{{SweepParameter::lambda_over_z0, numerics::linspace(0.05, 3.0, 60)},
                     {SweepParameter::ratio, numerics::linspace(0.02, 0.98, 49)}};
    req.channel = Channel::vdw;
    req.model = OrientationModel::isotropic();
    for (const auto& c : atlas(req).cells) {
        EXPECT_EQ(c.label.kind, RegimeKind::peak);
    }
    req.y.values = numerics::linspace(1.02, 3.0, 30);
    std::size_t valleys = 0;
    for (const auto& c : atlas(req).cells) {
        valleys += c.label.kind == RegimeKind::valley;
    }
    EXPECT_GT(valleys, 0u);
}

TEST(Atlas, Validation) {
    AtlasRequest req = phi_lambda_map(0.5);
    req.x.values = {1.0, 0.5};
    EXPECT_THROW(atlas(req), ArgumentError);
    req = phi_lambda_map(0.5);
    req.y.parameter = SweepParameter::lambda_over_z0;
    EXPECT_THROW(atlas(req), ArgumentError);
    req = phi_lambda_map(0.5);
    req.x.values = {};
    EXPECT_THROW(atlas(req), ArgumentError);
}

TEST(BoundaryCurve, ConductorLimitCrossesAtE) {
    const auto pts = boundary_curve(SweepParameter::ratio, {1e-8}, Tensor3::diagonal(1, 0, 0));
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_NEAR(pts[0].location, std::exp(1.0), 0.01);
}

TEST(BoundaryCurve, RatioRootsAreZerosOfC) {
    const Tensor3 D = Tensor3::diagonal(1, 0, 0);
    const auto pts = boundary_curve(SweepParameter::lambda_over_z0, numerics::linspace(0.3, 2.5, 23), D);
    ASSERT_FALSE(pts.empty());
    for (const auto& p : pts) {
        const double c = bc_decomposition(D, DielectricPair::from_ratio(p.location), 2 * pi / p.axis_value).C;
        const double scale = bc_decomposition(D, DielectricPair::from_ratio(0.0 + 1e-9), 2 * pi / p.axis_value).A;
        EXPECT_LE(std::abs(c), 1e-10 * scale);
    }
    EXPECT_TRUE(boundary_curve(SweepParameter::ratio, {0.5}, Tensor3::identity()).empty());
    EXPECT_THROW(boundary_curve(SweepParameter::phi, {0.5}, D), ArgumentError);
}

TEST(NamedThresholds, Values) {
    const auto t = named_thresholds();
    const auto find = [&](std::string_view name) {
        for (const auto& x : t) {
            if (x.name == name) {
                return x.value;
            }
        }
        ADD_FAILURE() << "missing " << name;
        return 0.0;
    };
    EXPECT_NEAR(find("x_dipole_max_boundary_ratio"), 1.23, 0.01);
    EXPECT_NEAR(find("y_dipole_boundary_asymptote"), 1.2, 0.01);
    EXPECT_NEAR(find("z_dipole_boundary_asymptote"), 1.74, 0.01);
    EXPECT_NEAR(find("isotropic_boundary_asymptote"), 0.864, 0.005);
    EXPECT_NEAR(find("g_classical_theta_pi_2"), 1.52, 0.01);
    EXPECT_LT(find("g_vdw_uniaxial_0.6_theta_pi_2"), find("g_classical_theta_pi_2"));
}

TEST(LimitG, BothSidesAgree) {
    const Tensor3 x = Tensor3::diagonal(1, 0, 0);
    const auto below = limit_g(x, LimitSide::from_below);
    const auto above = limit_g(x, LimitSide::from_above);
    ASSERT_TRUE(below && above);
    EXPECT_NEAR(*below, *above, 1e-4);
    EXPECT_NEAR(*below, 1.52, 0.01);
}

TEST(IntermediateCurve, BelowUnitRatio) {
    const auto th = numerics::linspace(0.0, pi, 181);
    const auto full = intermediate_curve(OrientationModel::classical(), 0.0, 0.5, 2.0, th);
    ASSERT_EQ(full.size(), th.size());
    const double base = std::floor(full.front().x_min_over_lambda + 1e-9);
    double lo = 1e9;
    double hi = -1e9;
    for (const auto& p : full) {
        lo = std::min(lo, p.x_min_over_lambda - base);
        hi = std::max(hi, p.x_min_over_lambda - base);
    }
    EXPECT_NEAR(lo, 0.0, 1e-9);
    EXPECT_NEAR(hi, 1.0, 1e-9);
    EXPECT_NEAR(full[90].x_min_over_lambda - base, 0.5, 1e-12);

    for (const auto& p : intermediate_curve(OrientationModel::classical(), 0.0, 0.99, 2.0, th)) {
        const double f = p.x_min_over_lambda - std::round(p.x_min_over_lambda);
        EXPECT_GT(f, -0.25);
        EXPECT_LT(f, 0.25);
    }
}

TEST(IntermediateCurve, AboveUnitRatioValleyConfined) {
    const auto th = numerics::linspace(0.0, pi, 181);
    for (const auto& p : intermediate_curve(OrientationModel::classical(), 0.0, 1.3, 1.0, th)) {
        const double f = p.x_min_over_lambda - std::floor(p.x_min_over_lambda);
        EXPECT_GT(f, 0.25);
        EXPECT_LT(f, 0.75);
    }
}

TEST(IntermediateCurve, IsContinuous) {
    const auto th = numerics::linspace(0.0, pi, 361);
    for (double r : {0.5, 1.2, 5.0}) {
        const auto c = intermediate_curve(OrientationModel::classical(), 0.0, r, r < 1 ? 2.0 : 1.0, th);
        for (std::size_t i = 1; i < c.size(); ++i) {
            EXPECT_LT(std::abs(c[i].x_min_over_lambda - c[i - 1].x_min_over_lambda), 0.1);
        }
    }
}
