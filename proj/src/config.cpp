#include "compdiff/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace compdiff {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

class Validator {
public:
    void error(const std::string& field, const std::string& what) {
        errors_.push_back(field + ": " + what);
    }

    template <typename T>
    bool fetch(const json& j, const std::string& parent, const std::string& key, T& out,
               bool required) {
        const std::string field = parent.empty() ? key : parent + "." + key;
        if (!j.contains(key)) {
            if (required) error(field, "missing required field");
            return false;
        }
        try {
            out = j.at(key).get<T>();
            return true;
        } catch (const json::exception& e) {
            error(field, std::string("wrong type (") + e.what() + ")");
            return false;
        }
    }

    void finish(const std::string& context) const {
        if (errors_.empty()) return;
        std::ostringstream msg;
        msg << context << ": " << errors_.size() << " validation error(s):";
        for (const std::string& e : errors_) msg << "\n  - " << e;
        throw ConfigError(msg.str());
    }

private:
    std::vector<std::string> errors_;
};

SimConfig parse_config(const json& j, const std::string& context) {
    Validator v;
    SimConfig cfg;

    if (j.contains("grid") && j.at("grid").is_object()) {
        v.fetch(j.at("grid"), "grid", "n", cfg.n, true);
    } else {
        v.error("grid", "missing required object");
    }
    if (cfg.n < 3) v.error("grid.n", "must be >= 3");

    if (j.contains("time") && j.at("time").is_object()) {
        const json& jt = j.at("time");
        v.fetch(jt, "time", "dt", cfg.time.dt, true);
        v.fetch(jt, "time", "t_end", cfg.time.t_end, true);
        v.fetch(jt, "time", "record_every", cfg.time.record_every, false);
        v.fetch(jt, "time", "snapshot_times", cfg.time.snapshot_times, false);
    } else {
        v.error("time", "missing required object");
    }
    if (!(cfg.time.dt > 0.0)) v.error("time.dt", "must be > 0");
    if (!(cfg.time.t_end >= cfg.time.dt)) v.error("time.t_end", "must be >= time.dt");
    if (cfg.time.record_every < 1) v.error("time.record_every", "must be >= 1");
    for (double ts : cfg.time.snapshot_times) {
        if (!(ts >= 0.0 && ts <= cfg.time.t_end)) {
            v.error("time.snapshot_times", "entry " + std::to_string(ts) +
                                               " outside [0, t_end]");
        }
    }

    if (j.contains("params") && j.at("params").is_object()) {
        const json& jp = j.at("params");
        v.fetch(jp, "params", "d1", cfg.params.d1, true);
        v.fetch(jp, "params", "d2", cfg.params.d2, true);
        v.fetch(jp, "params", "mu", cfg.params.mu, true);
        v.fetch(jp, "params", "nu", cfg.params.nu, true);
    } else {
        v.error("params", "missing required object");
    }
    if (!(cfg.params.d1 > 0.0)) v.error("params.d1", "must be > 0");
    if (!(cfg.params.d2 > 0.0)) v.error("params.d2", "must be > 0");
    if (!(cfg.params.mu >= 0.0)) v.error("params.mu", "must be >= 0");
    if (!(cfg.params.nu >= 0.0)) v.error("params.nu", "must be >= 0");

    if (j.contains("coefficients") && j.at("coefficients").is_object()) {
        const json& jc = j.at("coefficients");
        v.fetch(jc, "coefficients", "K", cfg.sources.K, true);
        v.fetch(jc, "coefficients", "r", cfg.sources.r, true);
        v.fetch(jc, "coefficients", "u0", cfg.sources.u0, true);
        v.fetch(jc, "coefficients", "v0", cfg.sources.v0, true);
    } else {
        v.error("coefficients", "missing required object");
    }

    auto parse_coeff = [&v](const std::string& field, const std::string& src, CoeffExpr& out) {
        if (src.empty()) return;
        try {
            out = CoeffExpr::parse(src);
        } catch (const ExprParseError& e) {
            v.error(field, e.what());
        }
    };
    parse_coeff("coefficients.K", cfg.sources.K, cfg.coefficients.K);
    parse_coeff("coefficients.r", cfg.sources.r, cfg.coefficients.r);
    parse_coeff("coefficients.u0", cfg.sources.u0, cfg.coefficients.u0);
    parse_coeff("coefficients.v0", cfg.sources.v0, cfg.coefficients.v0);

    if (j.contains("output") && j.at("output").is_object()) {
        v.fetch(j.at("output"), "output", "dir", cfg.output.dir, false);
    }

    if (j.contains("solver") && j.at("solver").is_object()) {
        const json& js = j.at("solver");
        v.fetch(js, "solver", "rel_tol", cfg.solver.rel_tol, false);
        v.fetch(js, "solver", "max_iters", cfg.solver.max_iters, false);
        v.fetch(js, "solver", "dt_guard", cfg.solver.dt_guard, false);
    }
    if (!(cfg.solver.rel_tol > 0.0 && cfg.solver.rel_tol < 1.0)) {
        v.error("solver.rel_tol", "must lie in (0,1)");
    }
    if (cfg.solver.max_iters < 0) {
        v.error("solver.max_iters", "must be >= 1, or 0 to pick 10*n^2 automatically");
    }

    if (j.contains("provenance") && j.at("provenance").is_object()) {
        for (const auto& [key, val] : j.at("provenance").items()) {
            if (val.is_string()) cfg.provenance[key] = val.get<std::string>();
        }
    }

    v.finish(context);
    return cfg;
}

}  // namespace

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str(), path.string());
}

SimConfig config_from_json_text(const std::string& text, const std::string& context) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(context + ": " + e.what());
    }
    return parse_config(j, context);
}

std::string config_to_json_text(const SimConfig& cfg) {
    json j;
    j["grid"]["n"] = cfg.n;
    j["time"]["dt"] = cfg.time.dt;
    j["time"]["t_end"] = cfg.time.t_end;
    j["time"]["record_every"] = cfg.time.record_every;
    j["time"]["snapshot_times"] = cfg.time.snapshot_times;
    j["params"]["d1"] = cfg.params.d1;
    j["params"]["d2"] = cfg.params.d2;
    j["params"]["mu"] = cfg.params.mu;
    j["params"]["nu"] = cfg.params.nu;
    j["coefficients"]["K"] = cfg.sources.K;
    j["coefficients"]["r"] = cfg.sources.r;
    j["coefficients"]["u0"] = cfg.sources.u0;
    j["coefficients"]["v0"] = cfg.sources.v0;
    j["output"]["dir"] = cfg.output.dir;
    j["solver"]["rel_tol"] = cfg.solver.rel_tol;
    j["solver"]["max_iters"] = cfg.solver.max_iters;
    j["solver"]["dt_guard"] = cfg.solver.dt_guard;
    if (!cfg.provenance.empty()) {
        for (const auto& [key, val] : cfg.provenance) j["provenance"][key] = val;
    }
    return j.dump(2) + "\n";
}

void emit_config(const SimConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open " + path.string() + " for writing");
    }
    out << config_to_json_text(cfg);
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.n = 33;
    cfg.time.dt = 0.1;
    cfg.params = ModelParams{1.0, 1.0, 0.0, 0.0};
    cfg.provenance["grid.n"] =
        "inferred: source does not state the mesh; 33 points per side resolve every "
        "coefficient used here";
    return cfg;
}

void set_coeffs(SimConfig& cfg, const std::string& K, const std::string& r,
                const std::string& u0, const std::string& v0) {
    cfg.sources = {K, r, u0, v0};
    cfg.coefficients = CoefficientSet::from_strings(K, r, u0, v0);
}

// record spacing sized so the energy CSV stays near 1e4 rows
void set_horizon(SimConfig& cfg, double t_end) {
    cfg.time.t_end = t_end;
    const double steps = t_end / cfg.time.dt;
    cfg.time.record_every = std::max(1L, std::lround(steps / 10000.0));
}

[[noreturn]] void unknown_variant(const std::string& name, const std::string& variant) {
    std::ostringstream msg;
    msg << "unknown variant '" << variant << "' for preset '" << name << "'; available:";
    for (const std::string& v : preset_variants(name)) msg << " " << v;
    throw ConfigError(msg.str());
}

SimConfig preset_exp1(const std::string& variant_in) {
    SimConfig cfg = base_config();
    set_coeffs(cfg, "2.1+cos(pi*x)*cos(pi*y)", "1.2", "1.8", "1.8");
    const std::string variant = variant_in.empty() ? "u-overharvest" : variant_in;
    if (variant == "u-overharvest") {
        cfg.params.mu = 1.5;
        cfg.params.nu = 0.08;
        set_horizon(cfg, 200.0);
        cfg.time.snapshot_times = {1.6};
        cfg.provenance["time.t_end"] = "inferred: short-run horizon for the over-harvest decay";
    } else if (variant == "v-overharvest") {
        cfg.params.mu = 0.08;
        cfg.params.nu = 1.5;
        set_horizon(cfg, 200.0);
        cfg.provenance["time.t_end"] = "inferred: short-run horizon for the over-harvest decay";
    } else if (variant == "both-overharvest") {
        cfg.params.mu = 1.5;
        cfg.params.nu = 1.5;
        set_horizon(cfg, 200.0);
        cfg.provenance["time.t_end"] = "inferred: short-run horizon for the over-harvest decay";
    } else if (variant == "u-drift") {
        cfg.params.mu = 0.0006;
        cfg.params.nu = 0.0;
        set_horizon(cfg, 2000.0);
    } else if (variant == "v-drift") {
        cfg.params.mu = 0.0;
        cfg.params.nu = 0.0006;
        set_horizon(cfg, 2000.0);
    } else if (variant.rfind("nu-", 0) == 0) {
        static const std::vector<std::string> nus = {"0.0005", "0.001", "0.0012",
                                                     "0.0015", "0.002", "0.0025"};
        const std::string val = variant.substr(3);
        bool known = false;
        for (const std::string& s : nus) known = known || s == val;
        if (!known) unknown_variant("exp1", variant);
        cfg.params.mu = 0.0009;
        cfg.params.nu = std::stod(val);
        set_horizon(cfg, 2000.0);
    } else {
        unknown_variant("exp1", variant);
    }
    return cfg;
}

SimConfig preset_exp2(const std::string& variant_in) {
    SimConfig cfg = base_config();
    set_coeffs(cfg, "2.5+sin(x)*sin(y)", "1.5+cos(x)*cos(y)", "1.2", "1.2");
    set_horizon(cfg, 3000.0);
    cfg.provenance["time.dt"] = "inferred: stated only for the first experiment; reused";
    const std::string variant = variant_in.empty() ? "equal" : variant_in;
    if (variant == "equal") {
        cfg.params.mu = 0.0009;
        cfg.params.nu = 0.0009;
    } else if (variant == "unequal") {
        cfg.params.mu = 0.0009;
        cfg.params.nu = 0.001;
    } else {
        unknown_variant("exp2", variant);
    }
    return cfg;
}

SimConfig preset_exp3(const std::string& variant) {
    if (!variant.empty()) unknown_variant("exp3", variant);
    SimConfig cfg = base_config();
    set_coeffs(cfg, "(2.1+cos(pi*x)*cos(pi*y))*(1.1+cos(t))", "1.0", "0.5", "1.5");
    cfg.params.mu = 0.0009;
    cfg.params.nu = 0.0025;
    set_horizon(cfg, 200.0);
    cfg.provenance["time.dt"] = "inferred: stated only for the first experiment; reused";
    cfg.provenance["time.t_end"] = "inferred: figure horizon";
    const double T = 13.74;
    cfg.time.snapshot_times = {T, T + kPi / 2.0, T + kPi, T + 1.5 * kPi, T + 2.0 * kPi};
    return cfg;
}

SimConfig preset_exp4(const std::string& variant) {
    if (!variant.empty()) unknown_variant("exp4", variant);
    SimConfig cfg = base_config();
    set_coeffs(cfg, "(1.2+2.5*pi^2*exp(-(x-0.5)^2-(y-0.5)^2))*(1.0+0.3*cos(t))", "1", "1.6",
               "1.6");
    cfg.params.mu = 0.0009;
    cfg.params.nu = 0.0025;
    set_horizon(cfg, 1600.0);
    cfg.provenance["time.dt"] = "inferred: stated only for the first experiment; reused";
    cfg.time.snapshot_times = {80.0, 1600.0};
    return cfg;
}

SimConfig preset_exp5(const std::string& variant_in) {
    SimConfig cfg = base_config();
    set_coeffs(cfg, "(2.5+cos(x)*cos(y))*(1.2+cos(t))", "(1.5+sin(x)*sin(y))*(1.2+sin(t))",
               "1.2", "1.2");
    set_horizon(cfg, 1000.0);
    cfg.provenance["time.dt"] = "inferred: stated only for the first experiment; reused";
    cfg.provenance["time.t_end"] = "inferred: long-run horizon; source shows short and long runs";
    const std::string variant = variant_in.empty() ? "equal" : variant_in;
    if (variant == "equal") {
        cfg.params.mu = 0.0009;
        cfg.params.nu = 0.0009;
    } else if (variant == "unequal") {
        cfg.params.mu = 0.0009;
        cfg.params.nu = 0.001;
    } else {
        unknown_variant("exp5", variant);
    }
    return cfg;
}

}  // namespace

SimConfig preset(const std::string& name, const std::string& variant) {
    if (name == "exp1") return preset_exp1(variant);
    if (name == "exp2") return preset_exp2(variant);
    if (name == "exp3") return preset_exp3(variant);
    if (name == "exp4") return preset_exp4(variant);
    if (name == "exp5") return preset_exp5(variant);
    std::ostringstream msg;
    msg << "unknown preset '" << name << "'; available: exp1 exp2 exp3 exp4 exp5";
    throw ConfigError(msg.str());
}

std::vector<std::string> preset_names() { return {"exp1", "exp2", "exp3", "exp4", "exp5"}; }

std::vector<std::string> preset_variants(const std::string& name) {
    if (name == "exp1") {
        return {"u-overharvest", "v-overharvest", "both-overharvest", "u-drift", "v-drift",
                "nu-0.0005",     "nu-0.001",      "nu-0.0012",        "nu-0.0015",
                "nu-0.002",      "nu-0.0025"};
    }
    if (name == "exp2" || name == "exp5") return {"equal", "unequal"};
    if (name == "exp3" || name == "exp4") return {};
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace compdiff
