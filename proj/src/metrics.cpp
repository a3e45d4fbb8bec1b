#include "evoc/metrics.hpp"

#include <algorithm>

namespace evoc {

int diversity(const WorldState& world) {
    std::vector<const Action*> ideas;
    ideas.reserve(world.agents.size());
    for (const auto& a : world.agents) ideas.push_back(&a.idea);
    std::sort(ideas.begin(), ideas.end(), [](const Action* x, const Action* y) { return *x < *y; });
    auto last = std::unique(ideas.begin(), ideas.end(), [](const Action* x, const Action* y) { return *x == *y; });
    return static_cast<int>(last - ideas.begin());
}

double mean_fitness(const WorldState& world) {
    if (world.agents.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& a : world.agents) sum += a.idea_fitness;
    return sum / static_cast<double>(world.agents.size());
}

double max_fitness_now(const WorldState& world) {
    double m = 0.0;
    for (const auto& a : world.agents) m = std::max(m, a.idea_fitness);
    return m;
}

Segregation segregation_index(const WorldState& world) {
    if (world.agents.empty()) return {};
    std::size_t low = 0, high = 0;
    for (const auto& a : world.agents) {
        if (a.p_invent <= kConformerBand + kBandTolerance) ++low;
        if (a.p_invent >= kCreatorBand - kBandTolerance) ++high;
    }
    const auto n = static_cast<double>(world.agents.size());
    return {static_cast<double>(low) / n, static_cast<double>(high) / n};
}

IterationMetrics measure(const WorldState& world) {
    IterationMetrics m;
    m.iteration = world.iteration;
    m.mean_fitness = mean_fitness(world);
    m.max_fitness = max_fitness_now(world);
    m.diversity = diversity(world);
    double p_sum = 0.0;
    for (const auto& a : world.agents) p_sum += a.p_invent;
    m.mean_p_invent = world.agents.empty() ? 0.0 : p_sum / static_cast<double>(world.agents.size());
    auto seg = segregation_index(world);
    m.frac_p_low = seg.frac_low;
    m.frac_p_high = seg.frac_high;
    return m;
}

std::optional<int> time_to_threshold(const std::vector<IterationMetrics>& series, double theta, double f_max) {
    const double threshold = theta * f_max;
    for (const auto& m : series)
        if (m.mean_fitness >= threshold) return m.iteration;
    return std::nullopt;
}

Peak peak_diversity(const std::vector<IterationMetrics>& series) {
    Peak best{};
    bool first = true;
    for (const auto& m : series) {
        if (first || m.diversity > best.value) {
            best = {m.iteration, m.diversity};
            first = false;
        }
    }
    return best;
}

} // namespace evoc
