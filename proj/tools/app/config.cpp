#include "config.hpp"

#include <fstream>
#include <stdexcept>

#include "gupjc/gup.hpp"

namespace gupjc::app {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        j.at(key).get_to(out);
    }
}

json grid_json(const GridSpec& g) {
    return {{"re_min", g.re_min}, {"re_max", g.re_max}, {"re_points", g.re_points},
            {"im_min", g.im_min}, {"im_max", g.im_max}, {"im_points", g.im_points}};
}

std::string atom_name(Atom a) { return a == Atom::ground ? "ground" : "excited"; }

Atom parse_atom(const std::string& s) {
    if (s == "ground" || s == "g") {
        return Atom::ground;
    }
    if (s == "excited" || s == "e") {
        return Atom::excited;
    }
    throw std::invalid_argument("unknown atom state '" + s + "' (ground|excited)");
}

}  // namespace

json to_json(const RunConfig& c) {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["command"] = c.command;
    j["preset"] = c.preset;
    j["gup"] = {{"gamma", c.gup.gamma},
                {"gamma0", c.gup.gamma * gamma_conversion_factor()},
                {"delta", c.gup.delta},
                {"epsilon", c.gup.epsilon}};
    j["interaction"] = {{"omega", c.interaction.omega},
                        {"omega0", c.interaction.omega0},
                        {"lambda", c.interaction.lambda}};
    j["rabi"] = {{"n", c.rabi.n},
                 {"n_max", c.rabi.n_max},
                 {"periods", c.rabi.periods},
                 {"points", c.rabi.points},
                 {"numeric", c.rabi.numeric}};
    j["dispersive"] = {{"mu", c.dispersive.mu_from_interaction ? json(nullptr) : json(c.dispersive.mu)},
                       {"alpha", {c.dispersive.alpha.real(), c.dispersive.alpha.imag()}},
                       {"t", c.dispersive.t},
                       {"ncut", c.dispersive.ncut},
                       {"atom", atom_name(c.dispersive.atom)},
                       {"t_points", c.dispersive.t_points}};
    j["wigner"] = {{"grid", grid_json(c.wigner.grid)},
                   {"extra_levels", c.wigner.extra_levels},
                   {"state", c.wigner.state}};
    j["zeta"] = {{"n", c.zeta.n},
                 {"omega_min", c.zeta.omega_min},
                 {"omega_max", c.zeta.omega_max},
                 {"omega_points", c.zeta.omega_points},
                 {"delta_min", c.zeta.delta_min},
                 {"delta_max", c.zeta.delta_max},
                 {"delta_points", c.zeta.delta_points}};
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["output_dir"] = c.output_dir;
    return j;
}

RunConfig from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("run configuration must be a JSON object");
    }
    const int version = j.value("schema_version", kConfigSchemaVersion);
    if (version != kConfigSchemaVersion) {
        throw std::invalid_argument("unsupported config schema_version " + std::to_string(version));
    }
    RunConfig c;
    read(j, "command", c.command);
    read(j, "preset", c.preset);
    if (j.contains("gup")) {
        const json& g = j["gup"];
        if (g.contains("gamma")) {
            g["gamma"].get_to(c.gup.gamma);
        } else if (g.contains("gamma0")) {
            c.gup.gamma = g["gamma0"].get<double>() / gamma_conversion_factor();
        }
        read(g, "delta", c.gup.delta);
        read(g, "epsilon", c.gup.epsilon);
    }
    if (j.contains("interaction")) {
        const json& i = j["interaction"];
        read(i, "omega", c.interaction.omega);
        read(i, "omega0", c.interaction.omega0);
        read(i, "lambda", c.interaction.lambda);
    }
    if (j.contains("rabi")) {
        const json& r = j["rabi"];
        read(r, "n", c.rabi.n);
        read(r, "n_max", c.rabi.n_max);
        read(r, "periods", c.rabi.periods);
        read(r, "points", c.rabi.points);
        read(r, "numeric", c.rabi.numeric);
    }
    if (j.contains("dispersive")) {
        const json& d = j["dispersive"];
        if (d.contains("mu")) {
            c.dispersive.mu_from_interaction = d["mu"].is_null();
            if (!d["mu"].is_null()) {
                d["mu"].get_to(c.dispersive.mu);
            }
        }
        if (d.contains("alpha")) {
            const json& a = d["alpha"];
            if (a.is_number()) {
                c.dispersive.alpha = a.get<double>();
            } else {
                c.dispersive.alpha = {a.at(0).get<double>(), a.at(1).get<double>()};
            }
        }
        read(d, "t", c.dispersive.t);
        read(d, "ncut", c.dispersive.ncut);
        if (d.contains("atom")) {
            c.dispersive.atom = parse_atom(d["atom"].get<std::string>());
        }
        read(d, "t_points", c.dispersive.t_points);
    }
    if (j.contains("wigner")) {
        const json& w = j["wigner"];
        if (w.contains("grid")) {
            const json& g = w["grid"];
            read(g, "re_min", c.wigner.grid.re_min);
            read(g, "re_max", c.wigner.grid.re_max);
            read(g, "re_points", c.wigner.grid.re_points);
            read(g, "im_min", c.wigner.grid.im_min);
            read(g, "im_max", c.wigner.grid.im_max);
            read(g, "im_points", c.wigner.grid.im_points);
        }
        read(w, "extra_levels", c.wigner.extra_levels);
        read(w, "state", c.wigner.state);
    }
    if (j.contains("zeta")) {
        const json& z = j["zeta"];
        read(z, "n", c.zeta.n);
        read(z, "omega_min", c.zeta.omega_min);
        read(z, "omega_max", c.zeta.omega_max);
        read(z, "omega_points", c.zeta.omega_points);
        read(z, "delta_min", c.zeta.delta_min);
        read(z, "delta_max", c.zeta.delta_max);
        read(z, "delta_points", c.zeta.delta_points);
    }
    read(j, "seed", c.seed);
    read(j, "threads", c.threads);
    read(j, "output_dir", c.output_dir);
    return c;
}

std::vector<std::string> preset_names() { return {"default", "fig1", "fig2", "fig3"}; }

RunConfig preset(const std::string& name) {
    RunConfig c;
    c.preset = name;
    if (name == "default") {
        return c;
    }
    if (name == "fig1") {
        c.gup = {1e3, 1.0, 1.0};
        c.interaction = {1e15, 1e15, 1.0};
        c.dispersive.mu = 1e5;
        c.dispersive.alpha = 1.0;
        c.dispersive.t = 1e3;
        return c;
    }
    if (name == "fig2" || name == "fig3") {
        c.gup = {name == "fig2" ? 0.5 : 5e3, 1.0, 1.0};
        c.zeta.n = 50;
        return c;
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("override must look like key.path=value: '" + assignment + "'");
    }
    std::string pointer = "/" + assignment.substr(0, eq);
    for (char& ch : pointer) {
        if (ch == '.') {
            ch = '/';
        }
    }
    if (!doc.contains(json::json_pointer(pointer)) && pointer != "/gup/gamma") {
        throw std::invalid_argument("unknown config field '" + assignment.substr(0, eq) + "'");
    }
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }
    doc[json::json_pointer(pointer)] = value;
    if (pointer == "/gup/gamma0" && doc["gup"].contains("gamma")) {
        doc["gup"].erase("gamma");
    }
}

void merge_config(json& base, const json& patch) {
    const bool gamma0_only = patch.contains("gup") && patch["gup"].contains("gamma0") &&
                             !patch["gup"].contains("gamma");
    base.merge_patch(patch);
    if (gamma0_only) {
        base["gup"].erase("gamma");
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config '" + path + "'");
    }
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
        throw std::invalid_argument("config '" + path + "' is not valid JSON");
    }
    return j;
}

RunConfig load_config(const std::string& path) { return from_json(read_json_file(path)); }

}  // namespace gupjc::app
