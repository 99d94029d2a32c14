#pragma once

#include <cmath>
#include <numbers>
#include <string_view>

#include "latvdw/corrugation.hpp"

namespace latvdw {

enum class Channel { classical, vdw };
enum class Order { zeroth, first };

inline std::string_view to_string(Channel c) { return c == Channel::classical ? "classical" : "vdw"; }

struct EnergyValue {
    double value; // U * eps0, lengths and dipoles in caller units
    Order order;
    Channel channel;
    Validity validity{};
};

struct PhaseDecomposition {
    double B = 0.0;
    double C = 0.0;
    double A = 0.0;
    double delta = 0.0; // atan2(B, C), in (-pi, pi]

    static PhaseDecomposition from_bc(double B, double C) {
        PhaseDecomposition p;
        p.B = B;
        p.C = C;
        p.A = std::hypot(B, C);
        p.delta = std::atan2(B, C);
        if (p.delta == -std::numbers::pi) {
            p.delta = std::numbers::pi;
        }
        return p;
    }
};

} // namespace latvdw
