#pragma once

// Run configuration for the command-line front end. A RunConfig is one JSON
// document; presets provide complete documents and command-line flags patch
// individual fields.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "gupjc/fock.hpp"
#include "gupjc/wigner.hpp"

namespace gupjc::app {

inline constexpr int kConfigSchemaVersion = 1;

struct GupInput {
    /// SI gamma in J^{-1/2}; gamma0 is derived from it.
    double gamma = 1e3;
    double delta = 1.0;
    double epsilon = 1.0;
};

struct InteractionInput {
    double omega = 1e16;
    double omega0 = 1e16;
    double lambda = 1.0;
};

struct RabiSettings {
    int n = 1;
    int n_max = 10;
    /// Length of the time series in periods of the amplitude oscillation.
    double periods = 3.0;
    int points = 201;
    bool numeric = true;
};

struct DispersiveSettings {
    /// lambda^2 / detuning when absent.
    bool mu_from_interaction = false;
    double mu = 1e5;
    cplx alpha{1.0, 0.0};
    double t = 1e3;
    int ncut = 30;
    Atom atom = Atom::ground;
    /// Samples of the fidelity-vs-time curve on [0, t].
    int t_points = 11;
};

struct WignerSettings {
    GridSpec grid;
    int extra_levels = -1;
    /// exact | decomposition | coherent
    std::string state = "exact";
};

struct ZetaSettings {
    int n = 50;
    double omega_min = 1e9;
    double omega_max = 1e17;
    int omega_points = 81;
    double delta_min = 1e3;
    double delta_max = 1e5;
    int delta_points = 41;
};

struct RunConfig {
    std::string command;
    std::string preset = "default";
    GupInput gup;
    InteractionInput interaction;
    RabiSettings rabi;
    DispersiveSettings dispersive;
    WignerSettings wigner;
    ZetaSettings zeta;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string output_dir = "out";
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig from_json(const nlohmann::json& j);

/// default, fig1, fig2, fig3
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Applies "a.b.c=value"; value is parsed as JSON, falling back to a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// RFC 7386 merge; a patch that sets gup.gamma0 alone replaces gup.gamma.
void merge_config(nlohmann::json& base, const nlohmann::json& patch);

nlohmann::json read_json_file(const std::string& path);
RunConfig load_config(const std::string& path);

}  // namespace gupjc::app
