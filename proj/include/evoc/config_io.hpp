#pragma once

#include "evoc/core.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace evoc {

struct SweepSpec {
    std::vector<double> c_grid;
    std::vector<double> p_grid;
    int replicates = 30;
};

struct SRSpec {
    int replicates = 30;
    double p_initial = 0.89;
};

/// A parsed config file: run parameters plus optional experiment blocks.
struct ExperimentConfig {
    SimConfig sim;
    std::optional<SweepSpec> sweep;
    std::optional<SRSpec> sr_compare;
    std::optional<std::string> output_dir;
};

/// 0.1, 0.2, ..., 1.0
std::vector<double> default_grid();

/**
 * Strict parse: unknown keys and wrong types raise ConfigError naming the
 * key, and the resulting SimConfig is validated.
 *
 * Top-level keys mirror SimConfig field names (`grid_width`, `creator_fraction`,
 * `neighborhood` = "von_neumann" | "moore", `invention_assessment` =
 * "trend" | "none", `fitness`, ...), plus the blocks `sweep` {C_grid, p_grid,
 * replicates}, `sr_compare` {replicates, p_initial} and `output_dir`.
 */
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);

/// Raised when the config file cannot be read (distinct from invalid content).
class ConfigReadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const SimConfig& config);

std::string to_string(Neighborhood n);
std::string to_string(InventionAssessment a);

} // namespace evoc
