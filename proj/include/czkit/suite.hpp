#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "czkit/space.hpp"

namespace czkit {

// A reproducible verification run: spaces (files or generator descriptors),
// radii, exponents, trial counts, and the list of check sections to execute.
struct SuiteConfig {
    std::uint64_t seed = 1;
    nlohmann::json spaces = nlohmann::json::array();
    std::vector<double> radii{1.0};
    std::vector<double> exponents{1.5, 2.0, 4.0};
    double kappa = 2.5;
    int trials = 50;
    std::vector<std::string> checks;
    std::string out_dir;

    static SuiteConfig from_json(const nlohmann::json& j);
};

struct RunReport {
    nlohmann::json body;  // deterministic given the config (seeds pinned)
    std::string timestamp;
    bool all_pass = true;

    nlohmann::json full() const;
};

// builds a space from {"file": ...} or {"generator": ..., ...}; the seed
// feeds the random generators and optional random weights
MetricMeasureSpace space_from_descriptor(const nlohmann::json& desc, std::uint64_t seed);

RunReport run_suite(const SuiteConfig& config);

// kinds: phi_surface, ratio_vs_p, overlap_hist, profile. Emits a tidy CSV
// with a header; header-only when the report carries no matching data.
void emit_plot_data(const RunReport& report, const std::string& kind, const std::string& path);

extern const char* kVersion;

}  // namespace czkit
