#include "evoc/dynamics.hpp"

#include <algorithm>

namespace evoc {

AcquireChoice decide_acquire(const AgentState& agent, Rng& rng) {
    return rng.uniform01() < agent.p_invent ? AcquireChoice::Invent : AcquireChoice::Imitate;
}

std::array<double, kPartStates> replacement_weights(const TrendModel& trends, std::size_t pos, bool biased) {
    std::array<double, kPartStates> w{1.0, 1.0, 1.0};
    if (biased) {
        for (int v = 0; v < kPartStates; ++v) w[v] = 1.0 + trends.estimate(pos, static_cast<PartState>(v));
    }
    const double total = w[0] + w[1] + w[2];
    for (auto& x : w) x /= total;
    return w;
}

Action invent(const AgentState& agent, const SimConfig& config, Rng& rng) {
    Action candidate = agent.idea;
    for (std::size_t pos = 0; pos < candidate.size(); ++pos) {
        if (rng.uniform01() >= config.mutation_rate) continue;
        const auto w = replacement_weights(agent.trends, pos, config.trend_bias_enabled);
        const double u = rng.uniform01();
        int v = 0;
        double acc = w[0];
        while (v < kPartStates - 1 && u >= acc) acc += w[++v];
        candidate[pos] = static_cast<PartState>(v);
    }
    return candidate;
}

double perceived_value(const TrendModel& trends, const Action& action) {
    double v = 0.0;
    for (std::size_t pos = 0; pos < action.size(); ++pos) v += trends.estimate(pos, action[pos]);
    return v;
}

bool accept_invention(const AgentState& agent, const Action& candidate, InventionAssessment mode) {
    if (mode == InventionAssessment::None) return true;
    return perceived_value(agent.trends, candidate) >= perceived_value(agent.trends, agent.idea);
}

std::optional<int> imitate(const WorldState& prev, const AgentState& agent) {
    std::array<int, 8> buf{};
    const int n = neighbors(prev.width, prev.height, prev.neighborhood, agent.id, buf);
    int best = -1;
    double best_fitness = 0.0;
    for (int k = 0; k < n; ++k) {
        const auto& other = prev.agents[static_cast<std::size_t>(buf[static_cast<std::size_t>(k)])];
        if (best < 0 || other.idea_fitness > best_fitness || (other.idea_fitness == best_fitness && other.id < best)) {
            best = other.id;
            best_fitness = other.idea_fitness;
        }
    }
    if (best >= 0 && best_fitness > agent.idea_fitness) return best;
    return std::nullopt;
}

void update_trends(TrendModel& trends, const Action& action, double fitness) {
    if (fitness < 0.0) throw std::invalid_argument("update_trends: fitness must be non-negative");
    trends.observe(action, fitness);
}

double sr_update(double p_invent, double own_fitness, double prev_mean, double delta) {
    if (own_fitness > prev_mean) return std::min(1.0, p_invent + delta);
    return std::max(0.0, p_invent - delta);
}

IterationMetrics step(WorldState& world, const SimConfig& config, const FitnessFunction& fitness, Rng& rng) {
    const WorldState prev = world;
    const double prev_mean = prev.prev_mean_fitness;
    std::array<int, 8> buf{};

    for (auto& agent : world.agents) {
        const AgentState& before = prev.agents[static_cast<std::size_t>(agent.id)];
        if (decide_acquire(before, rng) == AcquireChoice::Invent) {
            Action candidate = invent(before, config, rng);
            if (accept_invention(before, candidate, config.invention_assessment)) {
                agent.idea_fitness = fitness.evaluate(candidate);
                agent.idea = std::move(candidate);
            }
        } else if (auto source = imitate(prev, before)) {
            const auto& model = prev.agents[static_cast<std::size_t>(*source)];
            agent.idea = model.idea;
            agent.idea_fitness = model.idea_fitness;
        }

        update_trends(agent.trends, agent.idea, agent.idea_fitness);
        const int n = neighbors(prev.width, prev.height, prev.neighborhood, agent.id, buf);
        for (int k = 0; k < n; ++k) {
            const auto& seen = prev.agents[static_cast<std::size_t>(buf[static_cast<std::size_t>(k)])];
            update_trends(agent.trends, seen.idea, seen.idea_fitness);
        }

        if (config.sr_enabled) agent.p_invent = sr_update(agent.p_invent, agent.idea_fitness, prev_mean, config.sr_delta);
    }

    world.iteration = prev.iteration + 1;
    auto metrics = measure(world);
    world.prev_mean_fitness = metrics.mean_fitness;
    return metrics;
}

} // namespace evoc
