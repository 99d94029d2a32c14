#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "latvdw/dipole.hpp"
#include "latvdw/energy.hpp"
#include "latvdw/errors.hpp"
#include "latvdw/kernels.hpp"
#include "latvdw/media.hpp"
#include "latvdw/numerics.hpp"
#include "latvdw/tensor.hpp"

namespace latvdw {

enum class RegimeKind { peak, valley, intermediate, no_lateral_force };

inline std::string_view to_string(RegimeKind k) {
    switch (k) {
    case RegimeKind::peak:
        return "peak";
    case RegimeKind::valley:
        return "valley";
    case RegimeKind::intermediate:
        return "intermediate";
    default:
        return "none";
    }
}

struct RegimeLabel {
    RegimeKind kind;
    std::optional<double> x_min_over_lambda; // in [0, 1)
};

/// delta / 2 pi folded into [0, 1).
inline double phase_fraction(double delta) {
    double f = delta / (2.0 * std::numbers::pi);
    f -= std::floor(f);
    return f >= 1.0 ? 0.0 : f;
}

inline RegimeLabel classify(const PhaseDecomposition& p, double tol = 1e-12) {
    if (!(tol > 0.0)) {
        throw ArgumentError("classify tolerance must be positive");
    }
    if (!(p.A > DBL_MIN)) {
        return {RegimeKind::no_lateral_force, std::nullopt};
    }
    if (std::abs(p.B) <= tol * p.A) {
        return p.C > 0.0 ? RegimeLabel{RegimeKind::peak, 0.0} : RegimeLabel{RegimeKind::valley, 0.5};
    }
    return {RegimeKind::intermediate, phase_fraction(p.delta)};
}

/// Tensor D as a function of orientation angles.
struct OrientationModel {
    std::string name;
    std::function<Tensor3(double theta, double phi)> tensor;

    /// Unit permanent dipole along (theta, phi).
    static OrientationModel classical() {
        return {"classical", [](double theta, double phi) {
                    const Vec3 n = spherical_direction(theta, phi);
                    return Tensor3::outer(n, n);
                }};
    }
    /// <d_p^2> = 1 along (theta, phi), <d_n^2> = dn_over_dp across it.
    static OrientationModel uniaxial(double dn_over_dp) {
        if (!(dn_over_dp > 0.0 && dn_over_dp <= 1.0)) {
            throw ArgumentError("uniaxial ratio <dn^2>/<dp^2> must lie in (0, 1]");
        }
        return {"uniaxial", [dn_over_dp](double theta, double phi) {
                    return uniaxial_correlation(1.0, dn_over_dp, theta, phi).matrix();
                }};
    }
    static OrientationModel isotropic() {
        return {"isotropic", [](double, double) { return Tensor3::identity(); }};
    }
    static OrientationModel fixed(const Tensor3& D) {
        return {"fixed", [D](double, double) { return D; }};
    }
};

enum class SweepParameter { lambda_over_z0, ratio, phi, theta };

inline std::string_view to_string(SweepParameter p) {
    switch (p) {
    case SweepParameter::lambda_over_z0:
        return "lambda_over_z0";
    case SweepParameter::ratio:
        return "ratio";
    case SweepParameter::phi:
        return "phi";
    default:
        return "theta";
    }
}

struct Axis {
    SweepParameter parameter;
    std::vector<double> values;
};

struct SweepPoint {
    double ratio;
    double lambda_over_z0;
    double phi;
    double theta;
};

struct AtlasCell {
    SweepPoint at;
    PhaseDecomposition decomposition;
    RegimeLabel label;
    bool boundary = false;
};

struct AtlasRequest {
    Axis x;
    Axis y;
    SweepPoint fixed{1.0, 1.0, 0.0, std::numbers::pi / 2}; // values of the parameters not swept
    Channel channel = Channel::classical;
    OrientationModel model = OrientationModel::classical();
};

struct AtlasGrid {
    Axis x;
    Axis y;
    std::vector<AtlasCell> cells; // row-major, y outer, x inner

    [[nodiscard]] const AtlasCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * x.values.size() + ix]; }
};

namespace detail {

inline void set_parameter(SweepPoint& p, SweepParameter which, double v) {
    switch (which) {
    case SweepParameter::lambda_over_z0:
        p.lambda_over_z0 = v;
        break;
    case SweepParameter::ratio:
        p.ratio = v;
        break;
    case SweepParameter::phi:
        p.phi = v;
        break;
    default:
        p.theta = v;
        break;
    }
}

inline void check_axis(const Axis& a, bool positive) {
    if (a.values.empty()) {
        throw ArgumentError("atlas axis " + std::string(to_string(a.parameter)) + " has no values");
    }
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (!std::isfinite(a.values[i]) || (positive && !(a.values[i] > 0.0))) {
            throw ArgumentError("atlas axis " + std::string(to_string(a.parameter)) + " needs positive finite values");
        }
        if (i > 0 && !(a.values[i] > a.values[i - 1])) {
            throw ArgumentError("atlas axis " + std::string(to_string(a.parameter)) + " must be strictly increasing");
        }
    }
}

inline unsigned sweep_threads(std::size_t work) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("VDW_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) {
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
        }
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

/// Runs body(i) for i in [0, n) on up to sweep_threads() workers; each index is
/// written by exactly one worker, so results do not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& body) {
    const unsigned t = sweep_threads(n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += t) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace detail

inline PhaseDecomposition decompose_at(const SweepPoint& p, const OrientationModel& model) {
    return bc_decomposition(model.tensor(p.theta, p.phi), DielectricPair::from_ratio(p.ratio),
                            2.0 * std::numbers::pi / p.lambda_over_z0);
}

inline AtlasGrid atlas(const AtlasRequest& req) {
    const auto positive = [](SweepParameter s) {
        return s == SweepParameter::ratio || s == SweepParameter::lambda_over_z0;
    };
    detail::check_axis(req.x, positive(req.x.parameter));
    detail::check_axis(req.y, positive(req.y.parameter));
    if (req.x.parameter == req.y.parameter) {
        throw ArgumentError("atlas axes must sweep different parameters");
    }
    const std::size_t nx = req.x.values.size();
    const std::size_t ny = req.y.values.size();
    if (nx > 4096 || ny > 4096) {
        throw ArgumentError("atlas resolution is limited to 4096 x 4096");
    }
    if (!(req.fixed.ratio > 0.0) || !(req.fixed.lambda_over_z0 > 0.0)) {
        throw ArgumentError("atlas fixed ratio and lambda_over_z0 must be positive");
    }
    AtlasGrid g{req.x, req.y, std::vector<AtlasCell>(nx * ny)};
    detail::parallel_for(nx * ny, [&](std::size_t idx) {
        SweepPoint p = req.fixed;
        detail::set_parameter(p, req.x.parameter, req.x.values[idx % nx]);
        detail::set_parameter(p, req.y.parameter, req.y.values[idx / nx]);
        AtlasCell& c = g.cells[idx];
        c.at = p;
        c.decomposition = decompose_at(p, req.model);
        c.label = classify(c.decomposition);
    });
    const auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            AtlasCell& c = g.cells[iy * nx + ix];
            const int s = sign(c.decomposition.C);
            const auto differs = [&](std::size_t jx, std::size_t jy) {
                return sign(g.cells[jy * nx + jx].decomposition.C) * s < 0;
            };
            c.boundary = (ix > 0 && differs(ix - 1, iy)) || (ix + 1 < nx && differs(ix + 1, iy)) ||
                         (iy > 0 && differs(ix, iy - 1)) || (iy + 1 < ny && differs(ix, iy + 1));
        }
    }
    return g;
}

/// C / (1 - r): vanishes on the same set as C away from r = 1.
inline double reduced_c(const Tensor3& D, double ratio, double u) {
    const RadialKernel c = radial(KernelFamily::cond, u);
    const RadialKernel d = radial(KernelFamily::diel, u);
    return D(0, 0) * (c.xx + ratio * d.xx) + D(1, 1) * (c.yy + ratio * d.yy) + D(2, 2) * (c.zz + ratio * d.zz);
}

/// Default scan range for boundary roots in lambda / z0 (u from 0.05 to 50).
inline constexpr double kLambdaScanMin = 2.0 * std::numbers::pi / 50.0;
inline constexpr double kLambdaScanMax = 2.0 * std::numbers::pi / 0.05;

/// Roots in lambda/z0 of C at a fixed ratio, ascending.
inline std::vector<double> boundary_lambdas(const Tensor3& D, double ratio, double lo = kLambdaScanMin,
                                            double hi = kLambdaScanMax, std::size_t samples = 512) {
    const auto f = [&](double lam) { return reduced_c(D, ratio, 2.0 * std::numbers::pi / lam); };
    return numerics::bracket_roots(f, numerics::logspace(lo, hi, samples), 1e-12);
}

/// Boundary ratio at a fixed lambda/z0: C is linear in r, so the root is explicit.
inline std::optional<double> boundary_ratio(const Tensor3& D, double lambda_over_z0) {
    const double u = 2.0 * std::numbers::pi / lambda_over_z0;
    const double c0 = reduced_c(D, 0.0, u);
    const double c1 = reduced_c(D, 1.0, u) - c0;
    if (c1 == 0.0) {
        return std::nullopt;
    }
    const double r = -c0 / c1;
    if (!(r > 0.0) || !std::isfinite(r)) {
        return std::nullopt;
    }
    return r;
}

struct BoundaryPoint {
    double axis_value;
    double location;
};

/// For each axis value, the C = 0 locations along the other parameter: lambda/z0
/// roots when the axis is the ratio, the ratio root when the axis is lambda/z0.
inline std::vector<BoundaryPoint> boundary_curve(SweepParameter axis, const std::vector<double>& values,
                                                 const Tensor3& D) {
    std::vector<BoundaryPoint> out;
    for (double v : values) {
        if (!(v > 0.0)) {
            throw ArgumentError("boundary_curve axis values must be positive");
        }
        if (axis == SweepParameter::ratio) {
            for (double lam : boundary_lambdas(D, v)) {
                out.push_back({v, lam});
            }
        } else if (axis == SweepParameter::lambda_over_z0) {
            if (auto r = boundary_ratio(D, v)) {
                out.push_back({v, *r});
            }
        } else {
            throw ArgumentError("boundary_curve axis must be ratio or lambda_over_z0");
        }
    }
    return out;
}

enum class LimitSide { from_below, from_above };

/// Boundary location in lambda/z0 as r -> 1; nullopt when C keeps its sign.
inline std::optional<double> limit_g(const Tensor3& D, LimitSide side) {
    const double r = side == LimitSide::from_below ? 1.0 - 1e-6 : 1.0 + 1e-6;
    const auto roots = boundary_lambdas(D, r);
    if (roots.empty()) {
        return std::nullopt;
    }
    return roots.back();
}

struct FamilyLimit {
    double g;         // largest limit over the family
    double at_phi;    // azimuth where it is attained
    std::size_t hits; // sampled orientations that have a boundary
};

/// Largest r -> 1 boundary over phi in [0, pi/2] at fixed theta for one orientation model.
inline std::optional<FamilyLimit> limit_g_family(const OrientationModel& model, double theta, LimitSide side,
                                                 std::size_t samples = 91) {
    std::optional<FamilyLimit> best;
    std::size_t hits = 0;
    for (double phi : numerics::linspace(0.0, std::numbers::pi / 2, samples)) {
        if (auto g = limit_g(model.tensor(theta, phi), side)) {
            ++hits;
            if (!best || *g > best->g) {
                best = FamilyLimit{*g, phi, 0};
            }
        }
    }
    if (best) {
        best->hits = hits;
    }
    return best;
}

struct CurvePoint {
    double theta;
    double x_min_over_lambda;
};

/// Minimum location versus theta, unwrapped to the branch nearest the previous point.
inline std::vector<CurvePoint> intermediate_curve(const OrientationModel& model, double phi, double ratio,
                                                  double lambda_over_z0, const std::vector<double>& thetas) {
    if (!(ratio > 0.0) || !(lambda_over_z0 > 0.0)) {
        throw ArgumentError("intermediate_curve needs positive ratio and lambda_over_z0");
    }
    std::vector<CurvePoint> out;
    std::optional<double> prev;
    for (double th : thetas) {
        const PhaseDecomposition p = decompose_at({ratio, lambda_over_z0, phi, th}, model);
        const RegimeLabel l = classify(p);
        if (!l.x_min_over_lambda) {
            continue;
        }
        double x = *l.x_min_over_lambda;
        if (prev) {
            x += std::round(*prev - x);
        }
        out.push_back({th, x});
        prev = x;
    }
    return out;
}

/// One of the tabulated threshold values.
struct NamedThreshold {
    std::string name;
    std::string quantity; // "ratio" or "lambda_over_z0"
    double value;
    std::string note;
};

namespace detail {

inline double sup_boundary_ratio(const Tensor3& D, double& at_lambda) {
    const auto grid = numerics::logspace(0.05, 10.0, 400);
    std::size_t best = 0;
    double bv = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = boundary_ratio(D, grid[i]).value_or(-1.0);
        if (r > bv) {
            bv = r;
            best = i;
        }
    }
    if (bv <= 0.0) {
        throw NumericalError("no boundary ratio found for supremum search");
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    const auto [x, fx] = numerics::golden_section_minimize(
        [&](double lam) { return -boundary_ratio(D, lam).value_or(-1.0); }, lo, hi, 1e-10);
    at_lambda = x;
    return -fx;
}

inline double asymptotic_lambda(const Tensor3& D) {
    const auto roots = boundary_lambdas(D, 1e8);
    if (roots.empty()) {
        throw NumericalError("no large-ratio boundary found");
    }
    return roots.back();
}

} // namespace detail

/// The threshold table: boundary supremum for an x dipole, large-ratio asymptotes
/// for y, z and isotropic particles, and the r -> 1 limits g.
inline std::vector<NamedThreshold> named_thresholds() {
    std::vector<NamedThreshold> t;
    const Tensor3 x = Tensor3::diagonal(1, 0, 0);
    const Tensor3 y = Tensor3::diagonal(0, 1, 0);
    const Tensor3 z = Tensor3::diagonal(0, 0, 1);
    double at = 0.0;
    const double sx = detail::sup_boundary_ratio(x, at);
    t.push_back({"x_dipole_max_boundary_ratio", "ratio", sx, "attained at lambda_over_z0=" + std::to_string(at)});
    t.push_back({"y_dipole_boundary_asymptote", "lambda_over_z0", detail::asymptotic_lambda(y), "ratio=1e8"});
    t.push_back({"z_dipole_boundary_asymptote", "lambda_over_z0", detail::asymptotic_lambda(z), "ratio=1e8"});
    t.push_back({"isotropic_boundary_asymptote", "lambda_over_z0",
                 detail::asymptotic_lambda(Tensor3::identity()), "ratio=1e8"});
    const double half_pi = std::numbers::pi / 2;
    if (auto g = limit_g_family(OrientationModel::classical(), half_pi, LimitSide::from_below)) {
        t.push_back({"g_classical_theta_pi_2", "lambda_over_z0", g->g,
                     "max over phi; attained at phi=" + std::to_string(g->at_phi)});
    }
    if (auto g = limit_g_family(OrientationModel::uniaxial(0.6), half_pi, LimitSide::from_below)) {
        t.push_back({"g_vdw_uniaxial_0.6_theta_pi_2", "lambda_over_z0", g->g,
                     "max over phi; attained at phi=" + std::to_string(g->at_phi)});
    }
    return t;
}

} // namespace latvdw
