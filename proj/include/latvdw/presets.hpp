#pragma once

// Named parameter sets for the standard atlases and curves.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "latvdw/kernel_types.hpp"
#include "latvdw/numerics.hpp"
#include "latvdw/regimes.hpp"

namespace latvdw::presets {

struct KernelCurvePreset {
    std::string name;
    KernelFamily family;
    std::vector<double> u;
};

struct AtlasPreset {
    std::string name;
    std::string description;
    AtlasRequest request;
};

struct IntermediatePreset {
    std::string name;
    OrientationModel model;
    double phi;
    double lambda_over_z0;
    std::vector<double> ratios;
    std::vector<double> thetas;
};

namespace detail {

inline std::vector<double> periodic(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    }
    return v;
}

inline Axis lambda_axis(double lo, double hi, std::size_t n) {
    return {SweepParameter::lambda_over_z0, numerics::linspace(lo, hi, n)};
}

inline Axis phi_axis() { return {SweepParameter::phi, periodic(0.0, 2.0 * std::numbers::pi, 72)}; }

inline Axis ratio_axis() { return {SweepParameter::ratio, numerics::linspace(0.02, 3.0, 150)}; }

inline AtlasRequest phi_lambda(double ratio, Channel channel, OrientationModel model) {
    AtlasRequest r{lambda_axis(0.05, 6.0, 96), phi_axis()};
    r.fixed = {ratio, 1.0, 0.0, std::numbers::pi / 2};
    r.channel = channel;
    r.model = std::move(model);
    return r;
}

inline AtlasRequest ratio_lambda(double phi, double theta, Channel channel, OrientationModel model, double lmax) {
    AtlasRequest r{lambda_axis(0.05, lmax, 120), ratio_axis()};
    r.fixed = {1.0, 1.0, phi, theta};
    r.channel = channel;
    r.model = std::move(model);
    return r;
}

} // namespace detail

inline std::vector<KernelCurvePreset> kernel_presets() {
    const auto u = numerics::linspace(0.05, 10.0, 400);
    return {{"fig2", KernelFamily::cond, u}, {"fig3", KernelFamily::diel, u}};
}

inline std::vector<AtlasPreset> atlas_presets() {
    std::vector<AtlasPreset> out;
    const std::vector<double> ratios{1e-8, 0.5, 0.99, 1.01, 1.1, 1.2, 1.3, 5.0, 100.0};
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const std::string name = std::string("fig5") + static_cast<char>('a' + i);
        out.push_back({name, "classical dipole, theta=pi/2, phi vs lambda_over_z0, ratio=" + std::to_string(ratios[i]),
                       detail::phi_lambda(ratios[i], Channel::classical, OrientationModel::classical())});
    }
    const double half_pi = std::numbers::pi / 2;
    out.push_back({"fig6a", "x dipole, ratio vs lambda_over_z0",
                   detail::ratio_lambda(0.0, half_pi, Channel::classical, OrientationModel::classical(), 4.0)});
    out.push_back({"fig6b", "y dipole, ratio vs lambda_over_z0",
                   detail::ratio_lambda(half_pi, half_pi, Channel::classical, OrientationModel::classical(), 4.0)});
    out.push_back({"fig6c", "z dipole, ratio vs lambda_over_z0",
                   detail::ratio_lambda(0.0, 0.0, Channel::classical, OrientationModel::classical(), 4.0)});
    out.push_back({"fig9", "isotropic particle, ratio vs lambda_over_z0",
                   detail::ratio_lambda(0.0, 0.0, Channel::vdw, OrientationModel::isotropic(), 3.0)});
    const std::vector<double> vdw_ratios{0.5, 1.01, 1.1, 100.0};
    for (std::size_t i = 0; i < vdw_ratios.size(); ++i) {
        const std::string name = std::string("fig10") + static_cast<char>('a' + i);
        out.push_back({name, "uniaxial particle dn2/dp2=0.6, theta=pi/2, phi vs lambda_over_z0, ratio=" +
                                 std::to_string(vdw_ratios[i]),
                       detail::phi_lambda(vdw_ratios[i], Channel::vdw, OrientationModel::uniaxial(0.6))});
    }
    return out;
}

inline std::vector<IntermediatePreset> intermediate_presets() {
    const auto thetas = numerics::linspace(0.0, std::numbers::pi, 181);
    return {{"fig8a", OrientationModel::classical(), 0.0, 2.0, {0.5, 0.99}, thetas},
            {"fig8b", OrientationModel::classical(), 0.0, 1.0, {1.2, 1.3, 5.0}, thetas}};
}

template <class T>
std::optional<T> find(const std::vector<T>& all, const std::string& name) {
    for (const auto& p : all) {
        if (p.name == name) {
            return p;
        }
    }
    return std::nullopt;
}

} // namespace latvdw::presets
