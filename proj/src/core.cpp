#include "evoc/core.hpp"
#include "evoc/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace evoc {

Action::Action(int parts_per_step, int steps)
    : parts_(static_cast<std::size_t>(parts_per_step) * static_cast<std::size_t>(steps), PartState::Rest),
      steps_(steps) {
    if (parts_per_step < 1 || steps < 1) throw std::invalid_argument("Action: parts and steps must be >= 1");
}

Action::Action(std::vector<PartState> parts, int steps) : parts_(std::move(parts)), steps_(steps) {
    if (steps < 1 || parts_.empty() || parts_.size() % static_cast<std::size_t>(steps) != 0)
        throw std::invalid_argument("Action: part count must be a positive multiple of steps");
}

void TrendModel::observe(const Action& action, double fitness) {
    if (action.size() != count_.size()) throw std::invalid_argument("TrendModel: action length mismatch");
    for (std::size_t i = 0; i < action.size(); ++i) {
        auto v = idx(action[i]);
        count_[i][v] += 1;
        sum_[i][v] += fitness;
    }
}

bool TrendModel::empty() const {
    return std::all_of(count_.begin(), count_.end(), [](const auto& c) { return c[0] == 0 && c[1] == 0 && c[2] == 0; });
}

int SimConfig::creator_count() const {
    // round half up
    return static_cast<int>(std::floor(creator_fraction * agent_count() + 0.5));
}

namespace {

void require(bool ok, const char* field, const std::string& message) {
    if (!ok) throw ConfigError(field, message);
}

bool in_closed(double x, double lo, double hi) { return x >= lo && x <= hi; }

} // namespace

void validate(const SimConfig& c) {
    require(c.grid_width >= 2, "grid_width", "must be >= 2 (imitation needs a distinct neighbour)");
    require(c.grid_height >= 2, "grid_height", "must be >= 2 (imitation needs a distinct neighbour)");
    require(c.parts >= 1, "parts", "must be >= 1");
    require(c.steps_per_action >= 1, "steps_per_action", "must be >= 1");
    require(static_cast<long long>(c.parts) * c.steps_per_action <= 40, "steps_per_action",
            "parts * steps_per_action must be <= 40");
    require(in_closed(c.creator_fraction, 0.0, 1.0), "creator_fraction", "must lie in [0, 1]");
    require(in_closed(c.creator_p_invent, 0.0, 1.0), "creator_p_invent", "must lie in [0, 1]");
    require(c.mutation_rate > 0.0 && c.mutation_rate <= 1.0, "mutation_rate", "must lie in (0, 1]");
    require(in_closed(c.sr_delta, 0.0, 1.0), "sr_delta", "must lie in [0, 1]");
    require(c.iterations >= 1, "iterations", "must be >= 1");
    require(c.threshold_fraction > 0.0 && c.threshold_fraction <= 1.0, "threshold_fraction", "must lie in (0, 1]");
    require(is_known_fitness(c.fitness), "fitness", "unknown fitness function '" + c.fitness + "'");
    require(c.parts == 6, "parts", "the '" + c.fitness + "' landscape needs exactly 6 parts");
    require(c.fitness != "ref6x3" || c.steps_per_action == 1, "steps_per_action", "ref6x3 is single-step");
    require(std::isfinite(c.chain_beta) && c.chain_beta >= 0.0, "chain_beta", "must be finite and >= 0");
}

WorldState new_world(const SimConfig& config, const FitnessFunction& fitness, Rng& rng) {
    validate(config);
    const int n = config.agent_count();
    const Action rest = Action::rest(config.parts, config.steps_per_action);
    const double rest_fitness = fitness.evaluate(rest);

    WorldState world;
    world.width = config.grid_width;
    world.height = config.grid_height;
    world.neighborhood = config.neighborhood;
    world.agents.reserve(static_cast<std::size_t>(n));
    for (int id = 0; id < n; ++id)
        world.agents.push_back(AgentState{id, rest, rest_fitness, 0.0, TrendModel(rest.size())});

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
    for (int k = 0; k < config.creator_count(); ++k)
        world.agents[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].p_invent = config.creator_p_invent;

    world.iteration = 0;
    world.prev_mean_fitness = rest_fitness;
    return world;
}

WorldState new_world(const SimConfig& config, const FitnessFunction& fitness, std::uint64_t seed) {
    Rng rng(seed);
    return new_world(config, fitness, rng);
}

int neighbor_count(Neighborhood n) { return n == Neighborhood::Moore ? 8 : 4; }

int neighbors(int width, int height, Neighborhood n, int agent_id, std::span<int> out) {
    if (agent_id < 0 || agent_id >= width * height) throw std::out_of_range("neighbors: agent id out of range");
    const int count = neighbor_count(n);
    if (out.size() < static_cast<std::size_t>(count)) throw std::invalid_argument("neighbors: output too small");

    const int row = agent_id / width;
    const int col = agent_id % width;
    const int up = (row + height - 1) % height;
    const int down = (row + 1) % height;
    const int left = (col + width - 1) % width;
    const int right = (col + 1) % width;

    out[0] = up * width + col;
    out[1] = row * width + right;
    out[2] = down * width + col;
    out[3] = row * width + left;
    if (n == Neighborhood::Moore) {
        out[4] = up * width + right;
        out[5] = down * width + right;
        out[6] = down * width + left;
        out[7] = up * width + left;
    }
    return count;
}

std::vector<int> neighbors(const WorldState& world, int agent_id) {
    std::vector<int> out(static_cast<std::size_t>(neighbor_count(world.neighborhood)));
    neighbors(world.width, world.height, world.neighborhood, agent_id, out);
    return out;
}

} // namespace evoc
