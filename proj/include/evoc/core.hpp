#pragma once

#include "evoc/rng.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace evoc {

enum class PartState : std::uint8_t { Rest = 0, Up = 1, Down = 2 };

inline constexpr int kPartStates = 3;

/**
 * An idea for an action: `steps` consecutive body configurations of
 * `parts_per_step` parts each, stored step-major. A single-step action is the
 * plain action vector.
 */
class Action {
public:
    Action() = default;
    Action(int parts_per_step, int steps = 1);
    Action(std::vector<PartState> parts, int steps = 1);

    static Action rest(int parts_per_step, int steps = 1) { return Action(parts_per_step, steps); }

    int steps() const { return steps_; }
    int parts_per_step() const { return steps_ == 0 ? 0 : static_cast<int>(parts_.size()) / steps_; }
    std::size_t size() const { return parts_.size(); }

    PartState operator[](std::size_t i) const { return parts_[i]; }
    PartState& operator[](std::size_t i) { return parts_[i]; }
    PartState at(int step, int part) const { return parts_[static_cast<std::size_t>(step * parts_per_step() + part)]; }

    const std::vector<PartState>& parts() const { return parts_; }

    friend bool operator==(const Action&, const Action&) = default;
    friend auto operator<=>(const Action&, const Action&) = default;

private:
    std::vector<PartState> parts_;
    int steps_ = 1;
};

/**
 * Learned per-position statistics of how well each part value has fared.
 * Positions index the flattened action, so multi-step actions keep separate
 * statistics per step.
 */
class TrendModel {
public:
    TrendModel() = default;
    explicit TrendModel(std::size_t positions) : count_(positions), sum_(positions) {}

    std::size_t positions() const { return count_.size(); }

    void observe(const Action& action, double fitness);

    std::uint32_t obs_count(std::size_t pos, PartState v) const { return count_[pos][idx(v)]; }
    double fitness_sum(std::size_t pos, PartState v) const { return sum_[pos][idx(v)]; }

    /// Mean observed fitness for value v at pos; 0 when never observed.
    double estimate(std::size_t pos, PartState v) const {
        auto n = obs_count(pos, v);
        return n == 0 ? 0.0 : fitness_sum(pos, v) / n;
    }

    bool empty() const;

    friend bool operator==(const TrendModel&, const TrendModel&) = default;

private:
    static std::size_t idx(PartState v) { return static_cast<std::size_t>(v); }

    std::vector<std::array<std::uint32_t, kPartStates>> count_;
    std::vector<std::array<double, kPartStates>> sum_;
};

struct AgentState {
    int id = 0;
    Action idea;
    double idea_fitness = 0.0;
    double p_invent = 0.0;
    TrendModel trends;

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

enum class Neighborhood { VonNeumann, Moore };

/// How an invented candidate is vetted before it is implemented.
enum class InventionAssessment {
    /// Implement every candidate.
    None,
    /// Implement when the agent's trend model rates it no worse than the current idea.
    Trend,
};

struct SimConfig {
    int grid_width = 10;
    int grid_height = 10;
    int parts = 6;
    int steps_per_action = 1;
    double creator_fraction = 1.0;
    double creator_p_invent = 0.5;
    double mutation_rate = 1.0 / 6.0;
    bool trend_bias_enabled = true;
    InventionAssessment invention_assessment = InventionAssessment::Trend;
    bool sr_enabled = false;
    double sr_delta = 0.1;
    Neighborhood neighborhood = Neighborhood::VonNeumann;
    int iterations = 100;
    double threshold_fraction = 0.9;
    std::uint64_t seed = 1;
    std::string fitness = "ref6x3";
    double chain_beta = 2.0;

    int agent_count() const { return grid_width * grid_height; }
    int creator_count() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Raised for an out-of-range configuration value; field() names the key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Throws ConfigError naming the first offending field.
void validate(const SimConfig& config);

class FitnessFunction;

struct WorldState {
    int width = 0;
    int height = 0;
    Neighborhood neighborhood = Neighborhood::VonNeumann;
    std::vector<AgentState> agents;
    int iteration = 0;
    double prev_mean_fitness = 0.0;

    int size() const { return static_cast<int>(agents.size()); }

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

/**
 * Builds the initial society: everyone at rest, round(C*N) creators drawn
 * without replacement from `rng`, everyone else a pure imitator.
 */
WorldState new_world(const SimConfig& config, const FitnessFunction& fitness, Rng& rng);
WorldState new_world(const SimConfig& config, const FitnessFunction& fitness, std::uint64_t seed);

/// Number of neighbours for the topology (4 or 8).
int neighbor_count(Neighborhood n);

/**
 * Torus neighbours in fixed order N, E, S, W, then NE, SE, SW, NW for Moore.
 * Writes into `out` (must hold neighbor_count) and returns the count.
 */
int neighbors(int width, int height, Neighborhood n, int agent_id, std::span<int> out);
std::vector<int> neighbors(const WorldState& world, int agent_id);

} // namespace evoc
