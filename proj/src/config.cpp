// config.cpp
#include "decoq/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "decoq/errors.hpp"

namespace decoq {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

double req_number(const json& j, const std::string& path, const char* key) {
    return number_at(member(j, path, key), path + "." + key);
}

int req_int(const json& j, const std::string& path, const char* key) {
    const json& v = member(j, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

double opt_number(const json& j, const std::string& path, const char* key, double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number_at(j.at(key), path + "." + key);
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    if (!j.is_object()) return;
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) fail(path + "." + it.key(), "unknown field");
    }
}

QubitStateSpec parse_qubit(const json& j, const std::string& path) {
    reject_unknown(j, path, {"theta", "phi"});
    QubitStateSpec q;
    q.theta = req_number(j, path, "theta");
    q.phi = opt_number(j, path, "phi", 0.0);
    return q;
}

BosonStateSpec parse_boson(const json& j, const std::string& path) {
    reject_unknown(j, path, {"kind", "n", "nbar", "alpha_re", "alpha_im", "r", "truncation",
                             "leak_tol"});
    const json& kind = member(j, path, "kind");
    if (!kind.is_string()) fail(path + ".kind", "expected a string");
    BosonStateSpec spec;
    const std::string k = kind.get<std::string>();
    if (k == "fock") {
        spec.kind = BosonKind::fock;
        spec.fock_n = req_int(j, path, "n");
    } else if (k == "thermal") {
        spec.kind = BosonKind::thermal;
        spec.nbar = req_number(j, path, "nbar");
    } else if (k == "coherent") {
        spec.kind = BosonKind::coherent;
        spec.alpha = {opt_number(j, path, "alpha_re", 0.0), opt_number(j, path, "alpha_im", 0.0)};
    } else if (k == "squeezed_vacuum") {
        spec.kind = BosonKind::squeezed_vacuum;
        spec.r = req_number(j, path, "r");
    } else {
        fail(path + ".kind", "unknown value '" + k + "'");
    }
    spec.truncation = req_int(j, path, "truncation");
    spec.leak_tol = opt_number(j, path, "leak_tol", 1e-6);
    return spec;
}

PureDephasingSpec parse_pure_dephasing(const json& j, const std::string& path) {
    reject_unknown(j, path, {"g", "qubit", "boson"});
    PureDephasingSpec s;
    s.g = req_number(j, path, "g");
    s.qubit = parse_qubit(member(j, path, "qubit"), path + ".qubit");
    s.boson = parse_boson(member(j, path, "boson"), path + ".boson");
    return s;
}

CavityThermalSpec parse_cavity(const json& j, const std::string& path) {
    reject_unknown(j, path, {"modes", "cavity_state", "cavity_amplitudes", "cavity_truncation"});
    CavityThermalSpec s;
    const json& modes = member(j, path, "modes");
    if (!modes.is_array() || modes.empty()) fail(path + ".modes", "expected a non-empty array");
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string mp = path + ".modes." + std::to_string(i);
        reject_unknown(modes[i], mp, {"g", "nbar", "truncation"});
        CavityThermalSpec::Mode m;
        m.g = req_number(modes[i], mp, "g");
        m.nbar = req_number(modes[i], mp, "nbar");
        m.truncation = req_int(modes[i], mp, "truncation");
        s.modes.push_back(m);
    }
    const bool has_state = j.contains("cavity_state");
    const bool has_amps = j.contains("cavity_amplitudes");
    if (has_state == has_amps)
        fail(path, "provide exactly one of cavity_state and cavity_amplitudes");
    if (has_state) {
        s.cavity_state = parse_boson(j.at("cavity_state"), path + ".cavity_state");
    } else {
        const json& amps = j.at("cavity_amplitudes");
        if (!amps.is_array() || amps.empty())
            fail(path + ".cavity_amplitudes", "expected a non-empty array of [re, im] pairs");
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const json& a = amps[i];
            const std::string ap = path + ".cavity_amplitudes." + std::to_string(i);
            if (!a.is_array() || a.size() != 2) fail(ap, "expected [re, im]");
            s.cavity_amplitudes.push_back({number_at(a[0], ap + ".0"), number_at(a[1], ap + ".1")});
        }
        if (j.contains("cavity_truncation"))
            s.cavity_truncation = req_int(j, path, "cavity_truncation");
    }
    return s;
}

SpinBosonSpec parse_spin_boson(const json& j, const std::string& path) {
    reject_unknown(j, path, {"delta", "delta_G", "omega_rabi", "modes", "temperature", "qubit"});
    SpinBosonSpec s;
    s.delta = opt_number(j, path, "delta", 0.0);
    s.delta_G = req_number(j, path, "delta_G");
    s.omega_rabi = opt_number(j, path, "omega_rabi", 0.0);
    const json& modes = member(j, path, "modes");
    if (!modes.is_array() || modes.empty()) fail(path + ".modes", "expected a non-empty array");
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string mp = path + ".modes." + std::to_string(i);
        reject_unknown(modes[i], mp, {"g", "omega", "nbar", "truncation"});
        SpinBosonSpec::Mode m;
        m.g = req_number(modes[i], mp, "g");
        m.omega = req_number(modes[i], mp, "omega");
        if (modes[i].contains("nbar")) m.nbar = req_number(modes[i], mp, "nbar");
        m.truncation = req_int(modes[i], mp, "truncation");
        s.modes.push_back(m);
    }
    if (j.contains("temperature")) s.temperature = req_number(j, path, "temperature");
    s.qubit = parse_qubit(member(j, path, "qubit"), path + ".qubit");
    return s;
}

} // namespace

const char* ExperimentConfig::model_name() const {
    if (std::holds_alternative<PureDephasingSpec>(model)) return "pure_dephasing";
    if (std::holds_alternative<CavityThermalSpec>(model)) return "cavity_thermal";
    return "spin_boson";
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    reject_unknown(j, "config", {"model", "run", "sweep", "output"});

    ExperimentConfig cfg;
    const json& model = member(j, "config", "model");
    if (!model.is_object() || model.size() != 1)
        fail("config.model", "expected exactly one model variant");
    const std::string name = model.begin().key();
    const json& body = *model.begin();
    if (name == "pure_dephasing")
        cfg.model = parse_pure_dephasing(body, "config.model.pure_dephasing");
    else if (name == "cavity_thermal")
        cfg.model = parse_cavity(body, "config.model.cavity_thermal");
    else if (name == "spin_boson")
        cfg.model = parse_spin_boson(body, "config.model.spin_boson");
    else
        fail("config.model." + name, "unknown model variant");

    if (j.contains("run")) {
        const json& run = j.at("run");
        reject_unknown(run, "config.run", {"t_max", "steps", "eps_s"});
        cfg.run.t_max = opt_number(run, "config.run", "t_max", cfg.run.t_max);
        if (run.contains("steps")) cfg.run.steps = req_int(run, "config.run", "steps");
        cfg.run.eps_s = opt_number(run, "config.run", "eps_s", cfg.run.eps_s);
        if (!(cfg.run.t_max > 0.0)) fail("config.run.t_max", "must be > 0");
        if (cfg.run.steps < 16) fail("config.run.steps", "must be >= 16");
        if (!(cfg.run.eps_s > 0.0 && cfg.run.eps_s <= 0.5))
            fail("config.run.eps_s", "must lie in (0, 0.5]");
    }

    if (j.contains("sweep")) {
        const json& sw = j.at("sweep");
        reject_unknown(sw, "config.sweep", {"parameter", "values"});
        SweepParams sp;
        const json& par = member(sw, "config.sweep", "parameter");
        if (!par.is_string()) fail("config.sweep.parameter", "expected a string");
        sp.parameter = par.get<std::string>();
        const json& vals = member(sw, "config.sweep", "values");
        if (!vals.is_array() || vals.empty())
            fail("config.sweep.values", "expected a non-empty array");
        for (std::size_t i = 0; i < vals.size(); ++i)
            sp.values.push_back(number_at(vals[i], "config.sweep.values." + std::to_string(i)));
        // the path must resolve to a numeric leaf of this very document
        with_path_value(j, sp.parameter, sp.values.front());
        cfg.sweep = std::move(sp);
    }

    if (j.contains("output")) {
        const json& out = j.at("output");
        reject_unknown(out, "config.output", {"format", "path"});
        if (out.contains("format")) {
            const std::string f = out.at("format").is_string() ? out.at("format").get<std::string>() : "";
            if (f == "csv")
                cfg.output.format = OutputFormat::csv;
            else if (f == "json")
                cfg.output.format = OutputFormat::json;
            else
                fail("config.output.format", "expected \"csv\" or \"json\"");
        }
        if (out.contains("path")) {
            if (!out.at("path").is_string()) fail("config.output.path", "expected a string");
            cfg.output.path = out.at("path").get<std::string>();
        }
    }

    cfg.document = j;
    cfg.model_hash = canonical_hash(j);
    return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

nlohmann::json with_path_value(const json& j, const std::string& path, double value) {
    json out = j;
    json* cur = &out;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        const std::size_t dot = path.find('.', pos);
        const std::string tok = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (tok.empty()) throw ConfigError("sweep.parameter: empty path segment in '" + path + "'");
        const bool last = dot == std::string::npos;
        json* next = nullptr;
        if (cur->is_array()) {
            char* end = nullptr;
            const long idx = std::strtol(tok.c_str(), &end, 10);
            if (end == tok.c_str() || *end != '\0' || idx < 0 ||
                idx >= static_cast<long>(cur->size()))
                throw ConfigError("sweep.parameter: bad array index '" + tok + "' in '" + path + "'");
            next = &(*cur)[static_cast<std::size_t>(idx)];
        } else if (cur->is_object()) {
            auto it = cur->find(tok);
            if (it == cur->end())
                throw ConfigError("sweep.parameter: no field '" + tok + "' along '" + path + "'");
            next = &*it;
        } else {
            throw ConfigError("sweep.parameter: path '" + path + "' descends through a scalar");
        }
        if (last) {
            if (!next->is_number())
                throw ConfigError("sweep.parameter: '" + path + "' is not a numeric field");
            *next = value;
            return out;
        }
        cur = next;
        pos = dot + 1;
    }
    throw ConfigError("sweep.parameter: empty path");
}

std::string canonical_hash(const json& j) {
    const std::string dump = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace decoq
