#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

#include "config.hpp"

namespace gupjc::app {

inline constexpr int kManifestSchemaVersion = 1;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);

    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);

private:
    std::ofstream out_;
    std::size_t columns_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// Files written by a command, relative to its output directory.
struct Outputs {
    std::filesystem::path dir;
    std::vector<std::string> files;

    std::filesystem::path add(const std::string& name) {
        files.push_back(name);
        return dir / name;
    }
};

/// Inputs, constants and versions. Wall time goes to run.log instead, so the
/// manifest stays byte-identical on replay.
nlohmann::json manifest(const RunConfig& cfg, const Outputs& outputs);

/// Writes run_config.json and manifest.json, and the wall time to run.log.
void finish_run(const RunConfig& cfg, Outputs& outputs, double wall_seconds);

}  // namespace gupjc::app
