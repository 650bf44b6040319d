#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace gupjc::app {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    /// Zero when the criterion has no runtime limit.
    double limit_seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 0;
    int threads = 0;
    /// Scratch space for the determinism replay; a temporary directory when empty.
    std::filesystem::path work_dir;
    /// Criteria to run; all when empty.
    std::set<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "[PASS]  3  name  (0.01 s / 1 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace gupjc::app
