#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

#include "gupjc/errors.hpp"

namespace {

enum Exit { ok = 0, verify_failed = 1, usage = 2, model = 3 };

struct Flags {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> set;
    std::vector<int> only;
};

gupjc::app::RunConfig resolve(const std::string& command, const Flags& f) {
    using namespace gupjc::app;
    nlohmann::json file;
    if (!f.config.empty()) {
        file = read_json_file(f.config);
    }
    std::string base = f.preset;
    if (base.empty()) {
        base = file.contains("preset") ? file["preset"].get<std::string>() : "default";
    }
    nlohmann::json doc = to_json(preset(base));
    if (!file.is_null()) {
        merge_config(doc, file);
    }
    doc["preset"] = base;
    for (const auto& s : f.set) {
        apply_override(doc, s);
    }
    RunConfig cfg = from_json(doc);
    cfg.command = command;
    if (!f.out.empty()) {
        cfg.output_dir = f.out;
    }
    if (f.threads) {
        cfg.threads = *f.threads;
    }
    if (f.seed) {
        cfg.seed = *f.seed;
    }
    return cfg;
}

int verify(const gupjc::app::RunConfig& cfg, const Flags& f) {
    using namespace gupjc::app;
    AcceptanceOptions options;
    options.seed = cfg.seed;
    options.threads = cfg.threads;
    options.only.insert(f.only.begin(), f.only.end());
    const auto results = run_acceptance(options);
    bool all = true;
    nlohmann::json report = nlohmann::json::array();
    for (const auto& r : results) {
        std::cout << format_result(r) << '\n' << std::flush;
        all = all && r.passed;
        report.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
    if (!f.out.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        Outputs outputs{cfg.output_dir, {}};
        write_json(outputs.add("verify.json"), {{"passed", all}, {"criteria", report}});
        finish_run(cfg, outputs, 0.0);
    }
    return all ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GUP-corrected Jaynes-Cummings simulator"};
    app.require_subcommand(1);
    Flags flags;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--preset", flags.preset, "default, fig1, fig2 or fig3");
        sub->add_option("--out", flags.out, "output directory");
        sub->add_option("--threads", flags.threads, "worker threads (0 = hardware)");
        sub->add_option("--seed", flags.seed, "random seed");
        sub->add_option("--set", flags.set, "override a config field, e.g. gup.gamma=500");
    };
    const std::vector<std::pair<std::string, std::string>> commands{
        {"rabi", "resonant Rabi dynamics and the GUP frequency shift"},
        {"dispersive", "dispersive evolution and the photon-added decomposition"},
        {"wigner-diff", "Wigner difference against the rotated coherent state"},
        {"zeta-maps", "zeta_LQ and zeta_RQ maps over field frequency and detuning"},
        {"verify", "run the acceptance suite"}};
    for (const auto& [name, help] : commands) {
        add_common(app.add_subcommand(name, help));
    }
    app.get_subcommand("verify")->add_option("--only", flags.only, "criterion ids to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    gupjc::app::RunConfig cfg;
    try {
        cfg = resolve(command, flags);
        if (command == "verify") {
            return verify(cfg, flags);
        }
        const auto out = gupjc::app::run_command(cfg);
        std::cout << "wrote " << out.files.size() << " files to " << out.dir.string() << '\n';
        return ok;
    } catch (const gupjc::LinearityError& e) {
        std::cerr << "LinearityError: " << e.what() << "\n  time bound 1/(phi mu) = " << e.time_bound()
                  << " s\n";
        return model;
    } catch (const gupjc::DegenerateModelError& e) {
        std::cerr << "DegenerateModelError: " << e.what() << '\n';
        return model;
    } catch (const gupjc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return model;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return model;
    }
}
