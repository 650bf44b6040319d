#include "output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

#include "gupjc/gup.hpp"

namespace gupjc::app {

#ifndef GUPJC_VERSION
#define GUPJC_VERSION "0.0.0"
#endif

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header)
    : out_(path), columns_(header.size()) {
    if (!out_) {
        throw std::runtime_error("cannot write " + path.string());
    }
    bool first = true;
    for (const auto& h : header) {
        out_ << (first ? "" : ",") << h;
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) {
        throw std::logic_error("CsvWriter: column count mismatch");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        out_ << (i ? "," : "") << format_double(values[i]);
    }
    out_ << '\n';
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
}

nlohmann::json manifest(const RunConfig& cfg, const Outputs& outputs) {
    nlohmann::json m;
    m["schema_version"] = kManifestSchemaVersion;
    m["command"] = cfg.command;
    m["inputs"] = to_json(cfg);
    m["constants"] = {{"hbar", constants::hbar},
                      {"c", constants::c},
                      {"planck_mass", constants::planck_mass},
                      {"planck_length", constants::planck_length},
                      {"gamma_conversion", gamma_conversion_factor()}};
    m["versions"] = {{"gupjc", GUPJC_VERSION},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                     {"compiler", __VERSION__},
                     {"cplusplus", __cplusplus}};
    m["outputs"] = outputs.files;
    return m;
}

void finish_run(const RunConfig& cfg, Outputs& outputs, double wall_seconds) {
    write_json(outputs.add("run_config.json"), to_json(cfg));
    outputs.files.push_back("manifest.json");
    write_json(outputs.dir / "manifest.json", manifest(cfg, outputs));
    std::ofstream log(outputs.dir / "run.log");
    log << "command " << cfg.command << "\nwall_time_s " << format_double(wall_seconds) << '\n';
}

}  // namespace gupjc::app
