#pragma once

#include "evoc/core.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace evoc {

/// Band edges for the segregation index.
inline constexpr double kConformerBand = 0.1;
inline constexpr double kCreatorBand = 0.9;
/// Slack on band edges; repeated additive p updates accumulate rounding.
inline constexpr double kBandTolerance = 1e-9;

struct IterationMetrics {
    int iteration = 0;
    double mean_fitness = 0.0;
    double max_fitness = 0.0;
    int diversity = 0;
    double mean_p_invent = 0.0;
    double frac_p_low = 0.0;
    double frac_p_high = 0.0;

    friend bool operator==(const IterationMetrics&, const IterationMetrics&) = default;
};

struct RunResult {
    SimConfig config;
    std::uint64_t seed = 0;
    std::vector<IterationMetrics> series;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

int diversity(const WorldState& world);
double mean_fitness(const WorldState& world);
double max_fitness_now(const WorldState& world);

struct Segregation {
    double frac_low = 0.0;
    double frac_high = 0.0;
    double total() const { return frac_low + frac_high; }
};
Segregation segregation_index(const WorldState& world);

IterationMetrics measure(const WorldState& world);

/// Smallest iteration whose mean fitness reaches theta * f_max.
std::optional<int> time_to_threshold(const std::vector<IterationMetrics>& series, double theta, double f_max);

struct Peak {
    int iteration = 0;
    int value = 0;
};
/// Earliest iteration with maximal diversity.
Peak peak_diversity(const std::vector<IterationMetrics>& series);

} // namespace evoc
