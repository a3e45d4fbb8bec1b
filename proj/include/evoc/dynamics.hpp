#pragma once

#include "evoc/core.hpp"
#include "evoc/fitness.hpp"
#include "evoc/metrics.hpp"

#include <optional>

namespace evoc {

enum class AcquireChoice { Invent, Imitate };

/// One draw: Invent when it falls below p_invent.
AcquireChoice decide_acquire(const AgentState& agent, Rng& rng);

/**
 * Mutates a copy of the agent's idea. Each position is replaced with
 * probability mutation_rate; the replacement is uniform over the three states
 * or, with trend bias, proportional to 1 + estimate(pos, v).
 *
 * Draws: one per position, plus one per replaced position.
 */
Action invent(const AgentState& agent, const SimConfig& config, Rng& rng);

/// Probability of drawing each replacement value at `pos` (Rest, Up, Down order).
std::array<double, kPartStates> replacement_weights(const TrendModel& trends, std::size_t pos, bool biased);

/// Sum over positions of the trend estimate for the action's part values.
double perceived_value(const TrendModel& trends, const Action& action);

/// Whether an invented candidate replaces the current idea under `mode`.
bool accept_invention(const AgentState& agent, const Action& candidate, InventionAssessment mode);

/**
 * Fittest neighbour in the pre-step world (ties to the lowest id), returned
 * only when strictly fitter than the agent's own idea.
 */
std::optional<int> imitate(const WorldState& prev, const AgentState& agent);

void update_trends(TrendModel& trends, const Action& action, double fitness);

/// Additive social-regulation rule, clamped to [0, 1]. Equality with the mean counts as not fitter.
double sr_update(double p_invent, double own_fitness, double prev_mean, double delta);

/// Advances the world one synchronous iteration and reports metrics on the result.
IterationMetrics step(WorldState& world, const SimConfig& config, const FitnessFunction& fitness, Rng& rng);

} // namespace evoc
