#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latvdw/corrugation.hpp"
#include "latvdw/dipole.hpp"
#include "latvdw/energy.hpp"
#include "latvdw/errors.hpp"
#include "latvdw/io.hpp"
#include "latvdw/kernels.hpp"
#include "latvdw/media.hpp"
#include "latvdw/presets.hpp"
#include "latvdw/regimes.hpp"
#include "latvdw/verify.hpp"

namespace latvdw::cli {
namespace {

using json = nlohmann::json;
using io::fmt;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Fewest digits (15 or 17) that read back to the same double.
std::string shortest(double v) {
    for (int digits : {15, 17}) {
        std::ostringstream s;
        s << std::setprecision(digits) << v;
        if (digits == 17 || std::stod(s.str()) == v) {
            return s.str();
        }
    }
    return {};
}

// "# latvdw <command> k=v k=v ..."
class Header {
  public:
    explicit Header(const std::string& command) { line_ = "# latvdw " + command; }
    Header& add(const std::string& key, const std::string& value) {
        line_ += " " + key + "=" + value;
        return *this;
    }
    Header& add(const std::string& key, double value) { return add(key, shortest(value)); }
    [[nodiscard]] std::string str() const { return line_ + "\n"; }

  private:
    std::string line_;
};

void emit(const std::string& content, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot write '" + path + "'");
    }
    f << content;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (format == a) {
            return;
        }
    }
    throw ArgumentError("unsupported --format '" + format + "' for this subcommand");
}

std::vector<double> numbers(const std::string& s, const std::string& flag, std::size_t expected) {
    auto v = io::parse_numbers(s, flag);
    if (expected != 0 && v.size() != expected) {
        throw ArgumentError(flag + " expects " + std::to_string(expected) + " comma-separated numbers, got '" + s +
                            "'");
    }
    return v;
}

Channel parse_channel(const std::string& s) {
    if (s == "classical") {
        return Channel::classical;
    }
    if (s == "vdw") {
        return Channel::vdw;
    }
    throw ArgumentError("--channel must be 'classical' or 'vdw', got '" + s + "'");
}

OrientationModel parse_model(const std::string& s, double dn_over_dp) {
    if (s == "classical") {
        return OrientationModel::classical();
    }
    if (s == "uniaxial") {
        return OrientationModel::uniaxial(dn_over_dp);
    }
    if (s == "isotropic") {
        return OrientationModel::isotropic();
    }
    throw ArgumentError("--model must be classical, uniaxial or isotropic, got '" + s + "'");
}

SweepParameter parse_parameter(const std::string& s) {
    for (auto p : {SweepParameter::lambda_over_z0, SweepParameter::ratio, SweepParameter::phi, SweepParameter::theta}) {
        if (s == to_string(p)) {
            return p;
        }
    }
    throw ArgumentError("unknown sweep axis '" + s + "' (expected lambda_over_z0, ratio, phi or theta)");
}

// ---- energy ----------------------------------------------------------------

struct EnergyArgs {
    double eps1 = kNaN;
    double eps2 = kNaN;
    std::string profile;
    double z0 = kNaN;
    double x0 = 0.0;
    double y0 = 0.0;
    std::string channel;
    std::string dipole;
    std::string correlation;
    std::string uniaxial;
    double f = 1.0;
    bool force = false;
    bool si = false;
    std::string format = "json";
    std::string out;
};

io::ProfileInput load_profile(const std::string& s) {
    if (s.find(',') != std::string::npos && !std::filesystem::exists(s)) {
        const auto v = numbers(s, "--profile", 2);
        SinusoidalProfile p(v[0], v[1]);
        return {p, FourierProfile::from(p)};
    }
    return io::profile_from_json(io::load_json(s), s);
}

int run_energy(const EnergyArgs& a, std::ostream& out) {
    check_format(a.format, {"json", "csv"});
    const DielectricPair pair(a.eps1, a.eps2);
    const GeometryPoint point(a.x0, a.y0, a.z0);
    const io::ProfileInput profile = load_profile(a.profile);

    Tensor3 D;
    Channel channel = Channel::vdw;
    std::string source;
    if (!a.dipole.empty()) {
        const auto v = numbers(a.dipole, "--dipole", 3);
        D = DipoleCorrelation::from_classical(ClassicalDipole(v[0], v[1], v[2])).matrix();
        channel = Channel::classical;
        source = "dipole=" + a.dipole;
    } else if (!a.uniaxial.empty()) {
        const auto v = numbers(a.uniaxial, "--uniaxial", 4);
        D = uniaxial_correlation(v[0], v[1], v[2], v[3]).matrix();
        source = "uniaxial=" + a.uniaxial;
    } else if (!a.correlation.empty()) {
        D = io::correlation_from_json(io::load_json(a.correlation), EmbeddingFactor(a.f), a.correlation).matrix();
        source = "correlation=" + a.correlation;
    } else {
        throw ArgumentError("one of --dipole, --correlation or --uniaxial is required");
    }
    if (!a.channel.empty()) {
        channel = parse_channel(a.channel);
    }

    const double bound = profile.modes.amplitude_bound();
    const Validity val = validity(bound, a.z0);
    if (val.invalid() && !a.force) {
        throw ArgumentError("corrugation amplitude / z0 = " + shortest(val.amplitude_over_z0) +
                            " exceeds 0.1; first order is not reliable there (use --force to evaluate anyway)");
    }

    const EnergyValue e0 = u0(channel, D, pair, a.z0);
    json j;
    j["channel"] = std::string(to_string(channel));
    j["u0"] = e0.value + 0.0;
    std::optional<PhaseDecomposition> p;
    EnergyValue e1{};
    if (profile.sinusoidal) {
        e1 = u1_sinusoidal(channel, D, pair, *profile.sinusoidal, point);
        p = bc_decomposition(D, pair, profile.sinusoidal->k() * a.z0);
    } else {
        e1 = u1_general(channel, D, pair, profile.modes, point);
    }
    j["u1"] = e1.value + 0.0; // no negative zero in output
    j["u0_normalized"] = normalized_energy(e0.value, D, a.z0) + 0.0;
    j["u1_normalized"] = normalized_energy(e1.value, D, a.z0) + 0.0;
    j["A"] = nullptr;
    j["B"] = nullptr;
    j["C"] = nullptr;
    j["delta"] = nullptr;
    j["x_min"] = nullptr;
    j["x_min_over_lambda"] = nullptr;
    j["regime"] = nullptr;
    if (p) {
        const RegimeLabel label = classify(*p);
        j["A"] = p->A;
        j["B"] = p->B;
        j["C"] = p->C;
        j["delta"] = p->delta;
        j["regime"] = std::string(to_string(label.kind));
        if (auto xm = x_min(*p, *profile.sinusoidal)) {
            j["x_min"] = *xm;
            j["x_min_over_lambda"] = *xm / profile.sinusoidal->lambda();
        }
    }
    j["validity"] = val.label();
    j["amplitude_over_z0"] = val.amplitude_over_z0;
    j["reduced_units"] = true;
    if (a.si) {
        j["u0_si"] = to_si(e0.value);
        j["u1_si"] = to_si(e1.value);
    }

    if (a.format == "json") {
        emit(j.dump(2) + "\n", a.out, out);
        return 0;
    }
    Header h("energy");
    h.add("eps1", a.eps1).add("eps2", a.eps2).add("profile", a.profile).add("z0", a.z0).add("x0", a.x0);
    h.add("y0", a.y0).add("channel", std::string(to_string(channel))).add("source", source);
    std::string s = h.str();
    const std::vector<std::string> cols{"u0",    "u1",    "u0_normalized", "u1_normalized", "A",     "B",
                                        "C",     "delta", "x_min",         "x_min_over_lambda", "regime", "validity"};
    for (std::size_t i = 0; i < cols.size(); ++i) {
        s += (i ? "," : "") + cols[i];
    }
    s += "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const json& v = j[cols[i]];
        s += i ? "," : "";
        if (v.is_number()) {
            s += fmt(v.get<double>());
        } else if (v.is_string()) {
            s += v.get<std::string>();
        }
    }
    emit(s + "\n", a.out, out);
    return 0;
}

// ---- atlas -----------------------------------------------------------------

struct AtlasArgs {
    std::string preset;
    std::string x_axis = "lambda_over_z0";
    std::string x_range;
    std::string y_axis = "phi";
    std::string y_range;
    double ratio = 1.0;
    double lambda = 1.0;
    double phi = 0.0;
    double theta = std::numbers::pi / 2;
    std::string model = "classical";
    double dn_over_dp = 0.6;
    std::string channel;
    std::string format = "csv";
    std::string out;
};

Axis axis_from(const std::string& name, const std::string& range, const std::string& flag) {
    if (range.empty()) {
        throw ArgumentError(flag + " is required without --preset");
    }
    const auto v = numbers(range, flag, 3);
    if (!(v[2] >= 1.0) || v[2] != std::floor(v[2])) {
        throw ArgumentError(flag + ": point count must be a positive integer");
    }
    return {parse_parameter(name), numerics::linspace(v[0], v[1], static_cast<std::size_t>(v[2]))};
}

std::string atlas_csv(const AtlasGrid& g, const Header& h) {
    std::string s = h.str();
    s += "ratio,lambda_over_z0,phi,theta,B,C,delta,regime,x_min_over_lambda,boundary\n";
    for (const AtlasCell& c : g.cells) {
        s += fmt(c.at.ratio) + "," + fmt(c.at.lambda_over_z0) + "," + fmt(c.at.phi) + "," + fmt(c.at.theta) + ",";
        s += fmt(c.decomposition.B) + "," + fmt(c.decomposition.C) + "," + fmt(c.decomposition.delta) + ",";
        s += std::string(to_string(c.label.kind)) + ",";
        s += c.label.x_min_over_lambda ? fmt(*c.label.x_min_over_lambda) : "";
        s += c.boundary ? ",1\n" : ",0\n";
    }
    return s;
}

json atlas_json(const AtlasGrid& g, const json& parameters) {
    json cells = json::array();
    for (const AtlasCell& c : g.cells) {
        cells.push_back({{"ratio", c.at.ratio},
                         {"lambda_over_z0", c.at.lambda_over_z0},
                         {"phi", c.at.phi},
                         {"theta", c.at.theta},
                         {"B", c.decomposition.B},
                         {"C", c.decomposition.C},
                         {"delta", c.decomposition.delta},
                         {"regime", to_string(c.label.kind)},
                         {"x_min_over_lambda", c.label.x_min_over_lambda ? json(*c.label.x_min_over_lambda) : json()},
                         {"boundary", c.boundary}});
    }
    return {{"parameters", parameters}, {"cells", cells}};
}

int run_atlas(const AtlasArgs& a, bool custom_flags, std::ostream& out) {
    check_format(a.format, {"csv", "json"});
    AtlasRequest req{};
    std::string model_label;
    Header h("atlas");
    if (!a.preset.empty()) {
        if (custom_flags) {
            throw ArgumentError("--preset cannot be combined with sweep or model flags");
        }
        const auto p = presets::find(presets::atlas_presets(), a.preset);
        if (!p) {
            throw ArgumentError("unknown atlas preset '" + a.preset + "'");
        }
        req = p->request;
        model_label = req.model.name == "uniaxial" ? "uniaxial(dn_over_dp=0.6)" : req.model.name;
        h.add("preset", a.preset);
    } else {
        req.x = axis_from(a.x_axis, a.x_range, "--x-range");
        req.y = axis_from(a.y_axis, a.y_range, "--y-range");
        req.fixed = {a.ratio, a.lambda, a.phi, a.theta};
        req.model = parse_model(a.model, a.dn_over_dp);
        req.channel = a.model == "classical" ? Channel::classical : Channel::vdw;
        model_label = a.model == "uniaxial" ? "uniaxial(dn_over_dp=" + shortest(a.dn_over_dp) + ")" : a.model;
        h.add("preset", "custom");
    }
    if (!a.channel.empty()) {
        req.channel = parse_channel(a.channel);
    }
    const auto axis_desc = [](const Axis& ax) {
        return std::string(to_string(ax.parameter)) + "[" + shortest(ax.values.front()) + ":" +
               shortest(ax.values.back()) + ":" + std::to_string(ax.values.size()) + "]";
    };
    h.add("channel", std::string(to_string(req.channel))).add("model", model_label);
    h.add("x", axis_desc(req.x)).add("y", axis_desc(req.y));
    h.add("ratio", req.fixed.ratio).add("lambda_over_z0", req.fixed.lambda_over_z0);
    h.add("phi", req.fixed.phi).add("theta", req.fixed.theta);

    const AtlasGrid g = atlas(req);
    if (a.format == "csv") {
        emit(atlas_csv(g, h), a.out, out);
    } else {
        emit(atlas_json(g, h.str().substr(2, h.str().size() - 3)).dump(1) + "\n", a.out, out);
    }
    return 0;
}

// ---- thresholds ------------------------------------------------------------

struct ThresholdArgs {
    bool named = false;
    std::string preset;
    std::string format = "csv";
    std::string out;
};

int run_thresholds(const ThresholdArgs& a, std::ostream& out) {
    check_format(a.format, {"csv", "json"});
    if (a.named && !a.preset.empty()) {
        throw ArgumentError("--named and --preset are mutually exclusive");
    }
    json j = json::array();
    std::string s;
    if (!a.preset.empty()) {
        const auto p = presets::find(presets::kernel_presets(), a.preset);
        if (!p) {
            throw ArgumentError("unknown kernel preset '" + a.preset + "' (expected fig2 or fig3)");
        }
        s = Header("thresholds").add("preset", a.preset).add("family", std::string(to_string(p->family))).str();
        s += "u,lambda_over_z0,R_xx,R_yy,R_zz,R_xz\n";
        for (double u : p->u) {
            const RadialKernel r = radial(p->family, u);
            s += fmt(u) + "," + fmt(2.0 * std::numbers::pi / u) + "," + fmt(r.xx) + "," + fmt(r.yy) + "," +
                 fmt(r.zz) + "," + fmt(r.xz) + "\n";
            j.push_back({{"u", u}, {"R_xx", r.xx}, {"R_yy", r.yy}, {"R_zz", r.zz}, {"R_xz", r.xz}});
        }
    } else if (a.named) {
        s = Header("thresholds").add("table", "named").str() + "name,quantity,value,note\n";
        for (const auto& t : named_thresholds()) {
            s += t.name + "," + t.quantity + "," + fmt(t.value) + "," + t.note + "\n";
            j.push_back({{"name", t.name}, {"quantity", t.quantity}, {"value", t.value}, {"note", t.note}});
        }
    } else {
        s = Header("thresholds").add("table", "roots").add("u_scan", "[0.05:50:512 log]").str();
        s += "family,component,u_root,lambda_over_z0_root\n";
        for (auto fam : {KernelFamily::cond, KernelFamily::diel}) {
            for (auto c : kRadialComponents) {
                const auto r = radial_sign_root(fam, c);
                s += std::string(to_string(fam)) + "," + std::string(to_string(c)) + ",";
                s += r ? fmt(r->u) + "," + fmt(r->lambda_over_z0) + "\n" : ",\n";
                j.push_back({{"family", to_string(fam)},
                             {"component", to_string(c)},
                             {"u_root", r ? json(r->u) : json()},
                             {"lambda_over_z0_root", r ? json(r->lambda_over_z0) : json()}});
            }
        }
    }
    emit(a.format == "csv" ? s : j.dump(2) + "\n", a.out, out);
    return 0;
}

// ---- intermediate ----------------------------------------------------------

struct IntermediateArgs {
    std::string preset;
    std::string ratios;
    double lambda = kNaN;
    double phi = 0.0;
    std::string model = "classical";
    double dn_over_dp = 0.6;
    int theta_points = 181;
    std::string format = "csv";
    std::string out;
};

int run_intermediate(const IntermediateArgs& a, bool custom_flags, std::ostream& out) {
    check_format(a.format, {"csv", "json"});
    presets::IntermediatePreset p{};
    Header h("intermediate");
    if (!a.preset.empty()) {
        if (custom_flags) {
            throw ArgumentError("--preset cannot be combined with --ratio, --lambda, --phi, --model or --theta-points");
        }
        const auto found = presets::find(presets::intermediate_presets(), a.preset);
        if (!found) {
            throw ArgumentError("unknown intermediate preset '" + a.preset + "'");
        }
        p = *found;
        h.add("preset", a.preset).add("model", p.model.name);
    } else {
        if (a.ratios.empty() || std::isnan(a.lambda)) {
            throw ArgumentError("--ratio and --lambda are required without --preset");
        }
        if (a.theta_points < 2) {
            throw ArgumentError("--theta-points must be at least 2");
        }
        p = {"custom", parse_model(a.model, a.dn_over_dp), a.phi, a.lambda, numbers(a.ratios, "--ratio", 0),
             numerics::linspace(0.0, std::numbers::pi, static_cast<std::size_t>(a.theta_points))};
        h.add("preset", "custom").add("model", a.model == "uniaxial"
                                                    ? "uniaxial(dn_over_dp=" + shortest(a.dn_over_dp) + ")"
                                                    : a.model);
    }
    std::string ratios;
    for (double r : p.ratios) {
        ratios += (ratios.empty() ? "" : ";") + shortest(r);
    }
    h.add("phi", p.phi).add("lambda_over_z0", p.lambda_over_z0).add("ratios", ratios);
    h.add("theta", "[0:pi:" + std::to_string(p.thetas.size()) + "]");

    std::string s = h.str() + "ratio,theta,x_min_over_lambda\n";
    json j = json::array();
    for (double r : p.ratios) {
        for (const CurvePoint& c : intermediate_curve(p.model, p.phi, r, p.lambda_over_z0, p.thetas)) {
            s += fmt(r) + "," + fmt(c.theta) + "," + fmt(c.x_min_over_lambda) + "\n";
            j.push_back({{"ratio", r}, {"theta", c.theta}, {"x_min_over_lambda", c.x_min_over_lambda}});
        }
    }
    emit(a.format == "csv" ? s : j.dump(2) + "\n", a.out, out);
    return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string format = "text";
    std::string out;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
    check_format(a.format, {"text", "csv", "json"});
    const auto checks = verify::run_all();
    bool ok = true;
    std::string s;
    json j = json::array();
    if (a.format == "csv") {
        s = Header("verify").str() + "check,max_rel_error,tolerance,status\n";
    }
    for (const auto& c : checks) {
        ok = ok && c.passed();
        const char* status = c.passed() ? "pass" : "FAIL";
        if (a.format == "csv") {
            s += c.name + "," + fmt(c.max_rel_error) + "," + fmt(c.tolerance) + "," + status + "\n";
        } else {
            char line[160];
            std::snprintf(line, sizeof line, "%-40s %10.3e  tol %8.1e  %s\n", c.name.c_str(), c.max_rel_error,
                          c.tolerance, status);
            s += line;
        }
        j.push_back({{"check", c.name}, {"max_rel_error", c.max_rel_error}, {"tolerance", c.tolerance},
                     {"passed", c.passed()}});
    }
    if (a.format == "text") {
        s += ok ? "all checks passed\n" : "some checks FAILED\n";
    }
    emit(a.format == "json" ? j.dump(2) + "\n" : s, a.out, out);
    return ok ? 0 : 2;
}

// ---- job files -------------------------------------------------------------

int run_args(std::vector<std::string> args, std::ostream& out, std::ostream& err);

std::vector<std::string> job_arguments(const json& job, const std::string& where, const std::string& out_override,
                                       std::string* subcommand, std::string* preset, std::string* format) {
    if (!job.is_object()) {
        throw ArgumentError(where + ": a job must be a JSON object");
    }
    io::detail::only_fields(job, {"subcommand", "params", "out", "format"}, where);
    if (!job.contains("subcommand") || !job.at("subcommand").is_string()) {
        throw ArgumentError(where + ": missing string field 'subcommand'");
    }
    std::vector<std::string> args{job.at("subcommand").get<std::string>()};
    *subcommand = args[0];
    if (job.contains("params")) {
        const json& params = job.at("params");
        if (!params.is_object()) {
            throw ArgumentError(where + ": field 'params' must be an object");
        }
        for (const auto& [key, value] : params.items()) {
            std::string flag = key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            if (flag == "out" || flag == "format" || flag == "job") {
                throw ArgumentError(where + ": field 'params." + key + "' belongs at the top level of the job");
            }
            const std::string name = "--" + flag;
            if (value.is_boolean()) {
                if (value.get<bool>()) {
                    args.push_back(name);
                }
            } else if (value.is_number()) {
                args.push_back(name);
                args.push_back(value.is_number_integer() ? value.dump() : shortest(value.get<double>()));
            } else if (value.is_string()) {
                args.push_back(name);
                args.push_back(value.get<std::string>());
            } else if (value.is_array()) {
                std::string joined;
                for (const json& e : value) {
                    if (!e.is_number()) {
                        throw ArgumentError(where + ": field 'params." + key + "' must contain only numbers");
                    }
                    joined += (joined.empty() ? "" : ",") + shortest(e.get<double>());
                }
                args.push_back(name);
                args.push_back(joined);
            } else {
                throw ArgumentError(where + ": field 'params." + key + "' has an unsupported type");
            }
            if (key == "preset" && value.is_string()) {
                *preset = value.get<std::string>();
            }
        }
    }
    if (job.contains("format")) {
        if (!job.at("format").is_string()) {
            throw ArgumentError(where + ": field 'format' must be a string");
        }
        *format = job.at("format").get<std::string>();
        args.push_back("--format");
        args.push_back(*format);
    }
    std::string target = out_override;
    if (target.empty() && job.contains("out")) {
        if (!job.at("out").is_string()) {
            throw ArgumentError(where + ": field 'out' must be a string");
        }
        target = job.at("out").get<std::string>();
    }
    if (!target.empty()) {
        args.push_back("--out");
        args.push_back(target);
    }
    return args;
}

std::string default_extension(const std::string& subcommand, const std::string& format) {
    if (!format.empty()) {
        return format == "text" ? "txt" : format;
    }
    if (subcommand == "energy") {
        return "json";
    }
    return subcommand == "verify" ? "txt" : "csv";
}

int run_job(const std::string& path, std::ostream& out, std::ostream& err) {
    const json j = io::load_json(path);
    std::string sub;
    std::string preset;
    std::string format;
    if (j.is_object() && j.contains("jobs")) {
        io::detail::only_fields(j, {"jobs", "out_dir"}, path);
        if (!j.at("jobs").is_array()) {
            throw ArgumentError(path + ": field 'jobs' must be an array");
        }
        if (!j.contains("out_dir") || !j.at("out_dir").is_string()) {
            throw ArgumentError(path + ": batch jobs need a string field 'out_dir'");
        }
        const std::filesystem::path dir = j.at("out_dir").get<std::string>();
        std::filesystem::create_directories(dir);
        const json& jobs = j.at("jobs");
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const std::string where = path + ": jobs[" + std::to_string(i) + "]";
            if (jobs[i].is_object() && jobs[i].contains("out")) {
                throw ArgumentError(where + ": field 'out' is not allowed inside a batch (names come from out_dir)");
            }
            sub.clear();
            preset.clear();
            format.clear();
            job_arguments(jobs[i], where, "", &sub, &preset, &format);
            char index[8];
            std::snprintf(index, sizeof index, "%02zu", i + 1);
            const std::string name = std::string(index) + "-" + sub + "-" + (preset.empty() ? "custom" : preset) +
                                     "." + default_extension(sub, format);
            const auto args = job_arguments(jobs[i], where, (dir / name).string(), &sub, &preset, &format);
            const int code = run_args(args, out, err);
            if (code != 0) {
                err << where << ": failed with exit code " << code << "\n";
                return code;
            }
        }
        return 0;
    }
    return run_args(job_arguments(j, path, "", &sub, &preset, &format), out, err);
}

// ---- entry -----------------------------------------------------------------

int run_args(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dipole and van der Waals energies near a corrugated dielectric interface", "latvdw"};
    app.require_subcommand(0, 1);
    std::string job;
    app.add_option("--job", job, "JSON job file {subcommand, params, out, format} or {jobs, out_dir}");

    EnergyArgs ea;
    auto* energy = app.add_subcommand("energy", "Zeroth- and first-order energy at one position");
    energy->add_option("--eps1", ea.eps1, "Permittivity of the corrugated medium")->required();
    energy->add_option("--eps2", ea.eps2, "Permittivity of the host medium")->required();
    energy->add_option("--profile", ea.profile, "Profile JSON file, or 'a,lambda' for a sinusoid")->required();
    energy->add_option("--z0", ea.z0, "Height above the mean interface")->required();
    energy->add_option("--x0", ea.x0, "Lateral position along the corrugation");
    energy->add_option("--y0", ea.y0, "Lateral position across the corrugation");
    energy->add_option("--channel", ea.channel, "classical or vdw (default from the dipole source)");
    auto* dip = energy->add_option("--dipole", ea.dipole, "Permanent dipole '|d|,theta,phi'");
    auto* cor = energy->add_option("--correlation", ea.correlation, "Correlation tensor or polarizability JSON");
    auto* uni = energy->add_option("--uniaxial", ea.uniaxial, "Uniaxial correlation 'dp2,dn2,theta,phi'");
    dip->excludes(cor)->excludes(uni);
    cor->excludes(uni);
    energy->add_option("--f", ea.f, "Embedding factor for polarizability samples");
    energy->add_flag("--force", ea.force, "Evaluate even when amplitude / z0 > 0.1");
    energy->add_flag("--si", ea.si, "Also report SI energies (inputs in C m and m)");
    energy->add_option("--format", ea.format, "json or csv");
    energy->add_option("--out", ea.out, "Output path (default stdout)");

    AtlasArgs aa;
    auto* at = app.add_subcommand("atlas", "Regime map over two swept parameters");
    at->add_option("--preset", aa.preset, "Named preset (fig5a-i, fig6a-c, fig9, fig10a-d)");
    std::vector<CLI::Option*> atlas_custom{
        at->add_option("--x-axis", aa.x_axis, "lambda_over_z0, ratio, phi or theta"),
        at->add_option("--x-range", aa.x_range, "'lo,hi,n'"),
        at->add_option("--y-axis", aa.y_axis, "lambda_over_z0, ratio, phi or theta"),
        at->add_option("--y-range", aa.y_range, "'lo,hi,n'"),
        at->add_option("--ratio", aa.ratio, "eps2/eps1 when not swept"),
        at->add_option("--lambda", aa.lambda, "lambda/z0 when not swept"),
        at->add_option("--phi", aa.phi, "Azimuth when not swept"),
        at->add_option("--theta", aa.theta, "Polar angle when not swept"),
        at->add_option("--model", aa.model, "classical, uniaxial or isotropic"),
        at->add_option("--dn-over-dp", aa.dn_over_dp, "Uniaxial <dn^2>/<dp^2>")};
    at->add_option("--channel", aa.channel, "classical or vdw (default from the model)");
    at->add_option("--format", aa.format, "csv or json");
    at->add_option("--out", aa.out, "Output path (default stdout)");

    ThresholdArgs ta;
    auto* th = app.add_subcommand("thresholds", "Kernel sign changes, named thresholds, kernel curves");
    th->add_flag("--named", ta.named, "Print the named threshold table");
    th->add_option("--preset", ta.preset, "Kernel curve preset (fig2, fig3)");
    th->add_option("--format", ta.format, "csv or json");
    th->add_option("--out", ta.out, "Output path (default stdout)");

    IntermediateArgs ia;
    auto* im = app.add_subcommand("intermediate", "Minimum location versus polar angle");
    im->add_option("--preset", ia.preset, "Named preset (fig8a, fig8b)");
    std::vector<CLI::Option*> inter_custom{
        im->add_option("--ratio", ia.ratios, "eps2/eps1 values, comma separated"),
        im->add_option("--lambda", ia.lambda, "lambda/z0"),
        im->add_option("--phi", ia.phi, "Azimuth"),
        im->add_option("--model", ia.model, "classical, uniaxial or isotropic"),
        im->add_option("--dn-over-dp", ia.dn_over_dp, "Uniaxial <dn^2>/<dp^2>"),
        im->add_option("--theta-points", ia.theta_points, "Samples of theta on [0, pi]")};
    im->add_option("--format", ia.format, "csv or json");
    im->add_option("--out", ia.out, "Output path (default stdout)");

    VerifyArgs va;
    auto* ve = app.add_subcommand("verify", "Closed forms against the numerical oracles");
    ve->add_option("--format", va.format, "text, csv or json");
    ve->add_option("--out", va.out, "Output path (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (!job.empty()) {
            if (!app.get_subcommands().empty()) {
                throw ArgumentError("--job cannot be combined with a subcommand");
            }
            return run_job(job, out, err);
        }
        const auto any = [](const std::vector<CLI::Option*>& opts) {
            return std::any_of(opts.begin(), opts.end(), [](const CLI::Option* o) { return o->count() > 0; });
        };
        if (energy->parsed()) {
            return run_energy(ea, out);
        }
        if (at->parsed()) {
            return run_atlas(aa, any(atlas_custom), out);
        }
        if (th->parsed()) {
            return run_thresholds(ta, out);
        }
        if (im->parsed()) {
            return run_intermediate(ia, any(inter_custom), out);
        }
        if (ve->parsed()) {
            return run_verify(va, out);
        }
        err << app.help();
        return 1;
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run_args(args, out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run_args(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

} // namespace latvdw::cli
