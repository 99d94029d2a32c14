#pragma once

// JSON ingestion of profiles and dipole tensors, and fixed-format CSV output.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latvdw/corrugation.hpp"
#include "latvdw/dipole.hpp"
#include "latvdw/errors.hpp"
#include "latvdw/tensor.hpp"

namespace latvdw::io {

using json = nlohmann::json;

/// %.12e, the only float format used in CSV output.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Parses JSON text; errors carry line and column.
inline json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ArgumentError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON (" +
                            e.what() + ")");
    }
}

inline json load_json(const std::string& path) { return parse_json(read_file(path), path); }

namespace detail {

inline double number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) {
        throw ArgumentError(where + ": missing field '" + key + "'");
    }
    if (!j.at(key).is_number()) {
        throw ArgumentError(where + ": field '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

inline void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [k, v] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            ok = ok || k == a;
        }
        if (!ok) {
            throw ArgumentError(where + ": unknown field '" + k + "'");
        }
    }
}

inline Tensor3 matrix3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) {
        throw ArgumentError(where + ": expected a 3x3 array");
    }
    Tensor3 t;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3) {
            throw ArgumentError(where + ": row " + std::to_string(i) + " must have 3 numbers");
        }
        for (int k = 0; k < 3; ++k) {
            if (!j[i][k].is_number()) {
                throw ArgumentError(where + ": entry [" + std::to_string(i) + "][" + std::to_string(k) +
                                    "] is not a number");
            }
            t(i, k) = j[i][k].get<double>();
        }
    }
    return t;
}

} // namespace detail

/// A profile is either sinusoidal or a discrete list of modes.
struct ProfileInput {
    std::optional<SinusoidalProfile> sinusoidal;
    FourierProfile modes;
};

inline ProfileInput profile_from_json(const json& j, const std::string& where = "profile") {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw ArgumentError(where + ": expected an object with a string field 'type'");
    }
    const std::string type = j.at("type");
    if (type == "sinusoidal") {
        detail::only_fields(j, {"type", "a", "lambda"}, where);
        SinusoidalProfile s(detail::number(j, "a", where), detail::number(j, "lambda", where));
        return {s, FourierProfile::from(s)};
    }
    if (type == "modes") {
        detail::only_fields(j, {"type", "modes", "implicit_conjugate"}, where);
        if (!j.contains("modes") || !j.at("modes").is_array()) {
            throw ArgumentError(where + ": 'modes' must be an array");
        }
        std::vector<FourierMode> modes;
        for (std::size_t i = 0; i < j.at("modes").size(); ++i) {
            const json& m = j.at("modes")[i];
            const std::string w = where + ".modes[" + std::to_string(i) + "]";
            detail::only_fields(m, {"qx", "qy", "re", "im"}, w);
            modes.push_back({detail::number(m, "qx", w), detail::number(m, "qy", w),
                             {detail::number(m, "re", w), m.contains("im") ? detail::number(m, "im", w) : 0.0}});
        }
        const bool implicit = j.value("implicit_conjugate", false);
        return {std::nullopt, implicit ? FourierProfile::from_half_spectrum(modes) : FourierProfile(modes)};
    }
    throw ArgumentError(where + ": unknown profile type '" + type + "'");
}

/// Accepts a 3x3 matrix, {"matrix": ...}, an array of {xi, alpha} samples, or
/// {"samples": [...], "f": ...}. The embedding factor applies to samples only.
inline DipoleCorrelation correlation_from_json(const json& j, EmbeddingFactor f = EmbeddingFactor(),
                                               const std::string& where = "correlation") {
    const auto from_samples = [&](const json& arr, EmbeddingFactor ef) {
        std::vector<PolarizabilitySample> s;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = where + "[" + std::to_string(i) + "]";
            if (!arr[i].is_object()) {
                throw ArgumentError(w + ": expected {xi, alpha}");
            }
            detail::only_fields(arr[i], {"xi", "alpha"}, w);
            if (!arr[i].contains("alpha")) {
                throw ArgumentError(w + ": missing field 'alpha'");
            }
            s.push_back({detail::number(arr[i], "xi", w), detail::matrix3(arr[i].at("alpha"), w + ".alpha")});
        }
        return correlation_from_polarizability(s, ef);
    };
    if (j.is_array() && !j.empty() && j[0].is_object()) {
        return from_samples(j, f);
    }
    if (j.is_array()) {
        return DipoleCorrelation(detail::matrix3(j, where));
    }
    if (j.is_object()) {
        detail::only_fields(j, {"matrix", "samples", "f"}, where);
        if (j.contains("matrix")) {
            return DipoleCorrelation(detail::matrix3(j.at("matrix"), where + ".matrix"));
        }
        if (j.contains("samples")) {
            const EmbeddingFactor ef = j.contains("f") ? EmbeddingFactor(detail::number(j, "f", where)) : f;
            return from_samples(j.at("samples"), ef);
        }
    }
    throw ArgumentError(where + ": expected a 3x3 matrix or polarizability samples");
}

/// Comma-separated list of numbers.
inline std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) {
                ++used;
            }
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw ArgumentError(what + ": '" + item + "' is not a number");
        }
    }
    return v;
}

} // namespace latvdw::io
