#pragma once

#include "evoc/core.hpp"

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace evoc {

/// A task: a pure, deterministic score for every action.
class FitnessFunction {
public:
    virtual ~FitnessFunction() = default;
    virtual double evaluate(const Action& action) const = 0;
    /// Exact global maximum, computed by an oracle.
    virtual double max_fitness() const = 0;
    virtual std::string_view name() const = 0;
};

/**
 * Six-part body, parts ordered (head, left arm, right arm, left leg,
 * right leg, torso). One point per moving part, plus 4 when both arms make the
 * same movement and 4 when both legs do. The all-rest body scores 0 and the
 * maximum is 14.
 */
double eval_ref6x3(std::span<const PartState> parts);
double eval_ref6x3(const Action& action);

/// Parts i where both steps move and the movements differ.
int alternation(std::span<const PartState> prev, std::span<const PartState> next);

/// Sum of per-step ref6x3 scores plus beta times the alternation of each consecutive pair.
double eval_chain(const Action& action, double beta = 2.0);

class Ref6x3 final : public FitnessFunction {
public:
    double evaluate(const Action& action) const override { return eval_ref6x3(action); }
    double max_fitness() const override;
    std::string_view name() const override { return "ref6x3"; }
};

class Chain6x3 final : public FitnessFunction {
public:
    explicit Chain6x3(int steps, double beta = 2.0);
    double evaluate(const Action& action) const override { return eval_chain(action, beta_); }
    double max_fitness() const override { return max_; }
    std::string_view name() const override { return "chain6x3"; }
    int steps() const { return steps_; }
    double beta() const { return beta_; }

private:
    int steps_;
    double beta_;
    double max_;
};

struct OptimumResult {
    double max = 0.0;
    std::uint64_t count = 0;
};

/// Thrown when an oracle's search space exceeds its capacity.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/**
 * Exhaustive search over all `alphabet`^`positions` actions (laid out as
 * `steps` steps). Ties in the maximum are counted exactly.
 */
OptimumResult global_optimum_enumerate(const std::function<double(const Action&)>& f, int positions,
                                       int alphabet = kPartStates, int steps = 1);
OptimumResult global_optimum_enumerate(const FitnessFunction& f, int parts_per_step, int steps = 1);

/// Maximum of eval_chain over T steps by dynamic programming on the previous step.
double chain_optimum_dp(int steps, double beta = 2.0);

/// Looks up a landscape by registered name ("ref6x3", "chain6x3").
std::unique_ptr<FitnessFunction> make_fitness(std::string_view name, int steps = 1, double beta = 2.0);
std::unique_ptr<FitnessFunction> make_fitness(const SimConfig& config);

bool is_known_fitness(std::string_view name);

} // namespace evoc
