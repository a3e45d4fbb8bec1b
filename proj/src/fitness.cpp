#include "evoc/fitness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace evoc {

namespace {

constexpr int kBodyParts = 6;
constexpr int kLeftArm = 1, kRightArm = 2, kLeftLeg = 3, kRightLeg = 4;
constexpr double kPairBonus = 4.0;

// 3^6 single-step bodies.
constexpr int kBodies = 729;

bool moves(PartState s) { return s != PartState::Rest; }

void require_six(std::size_t parts) {
    if (parts != kBodyParts) throw std::invalid_argument("ref6x3 needs exactly 6 parts per step");
}

std::array<PartState, kBodyParts> decode_body(int code) {
    std::array<PartState, kBodyParts> b{};
    for (auto& p : b) {
        p = static_cast<PartState>(code % 3);
        code /= 3;
    }
    return b;
}

} // namespace

double eval_ref6x3(std::span<const PartState> a) {
    require_six(a.size());
    double score = 0.0;
    for (auto s : a) score += moves(s) ? 1.0 : 0.0;
    if (moves(a[kLeftArm]) && a[kLeftArm] == a[kRightArm]) score += kPairBonus;
    if (moves(a[kLeftLeg]) && a[kLeftLeg] == a[kRightLeg]) score += kPairBonus;
    return score;
}

double eval_ref6x3(const Action& action) {
    if (action.steps() != 1) throw std::invalid_argument("ref6x3 is single-step");
    return eval_ref6x3(std::span<const PartState>(action.parts()));
}

int alternation(std::span<const PartState> prev, std::span<const PartState> next) {
    int n = 0;
    for (std::size_t i = 0; i < prev.size(); ++i)
        if (moves(prev[i]) && moves(next[i]) && prev[i] != next[i]) ++n;
    return n;
}

double eval_chain(const Action& action, double beta) {
    require_six(static_cast<std::size_t>(action.parts_per_step()));
    std::span<const PartState> all(action.parts());
    double score = 0.0;
    for (int t = 0; t < action.steps(); ++t) {
        auto cur = all.subspan(static_cast<std::size_t>(t) * kBodyParts, kBodyParts);
        score += eval_ref6x3(cur);
        if (t > 0) score += beta * alternation(all.subspan(static_cast<std::size_t>(t - 1) * kBodyParts, kBodyParts), cur);
    }
    return score;
}

double Ref6x3::max_fitness() const {
    static const double cached = global_optimum_enumerate(*this, kBodyParts).max;
    return cached;
}

namespace {

// The DP costs O(T * 729^2); runs of one experiment share the same (T, beta).
double cached_chain_optimum(int steps, double beta) {
    static std::mutex mutex;
    static std::map<std::pair<int, double>, double> cache;
    std::lock_guard lock(mutex);
    auto [it, inserted] = cache.try_emplace({steps, beta}, 0.0);
    if (inserted) it->second = chain_optimum_dp(steps, beta);
    return it->second;
}

} // namespace

Chain6x3::Chain6x3(int steps, double beta) : steps_(steps), beta_(beta), max_(cached_chain_optimum(steps, beta)) {}

OptimumResult global_optimum_enumerate(const std::function<double(const Action&)>& f, int positions, int alphabet,
                                       int steps) {
    if (positions < 1 || alphabet < 1 || steps < 1 || positions % steps != 0)
        throw std::invalid_argument("global_optimum_enumerate: bad shape");
    std::uint64_t total = 1;
    for (int i = 0; i < positions; ++i) {
        total *= static_cast<std::uint64_t>(alphabet);
        if (total > kEnumerationLimit) throw CapacityError("search space exceeds enumeration limit");
    }
    if (alphabet > kPartStates) throw std::invalid_argument("alphabet larger than the part state set");

    std::vector<PartState> parts(static_cast<std::size_t>(positions), PartState::Rest);
    OptimumResult best{-INFINITY, 0};
    for (std::uint64_t code = 0; code < total; ++code) {
        auto c = code;
        for (auto& p : parts) {
            p = static_cast<PartState>(c % static_cast<std::uint64_t>(alphabet));
            c /= static_cast<std::uint64_t>(alphabet);
        }
        const double v = f(Action(parts, steps));
        if (v > best.max) {
            best = {v, 1};
        } else if (v == best.max) {
            ++best.count;
        }
    }
    return best;
}

OptimumResult global_optimum_enumerate(const FitnessFunction& f, int parts_per_step, int steps) {
    return global_optimum_enumerate([&f](const Action& a) { return f.evaluate(a); }, parts_per_step * steps,
                                    kPartStates, steps);
}

double chain_optimum_dp(int steps, double beta) {
    if (steps < 1) throw std::invalid_argument("chain_optimum_dp: steps must be >= 1");

    std::vector<std::array<PartState, kBodyParts>> bodies(kBodies);
    std::vector<double> score(kBodies);
    for (int b = 0; b < kBodies; ++b) {
        bodies[b] = decode_body(b);
        score[b] = eval_ref6x3(bodies[b]);
    }

    // best[b]: maximum over chains ending in body b
    std::vector<double> best = score;
    std::vector<double> next(kBodies);
    for (int t = 1; t < steps; ++t) {
        for (int b = 0; b < kBodies; ++b) {
            double m = -INFINITY;
            for (int a = 0; a < kBodies; ++a) m = std::max(m, best[a] + beta * alternation(bodies[a], bodies[b]));
            next[b] = m + score[b];
        }
        best.swap(next);
    }
    return *std::max_element(best.begin(), best.end());
}

bool is_known_fitness(std::string_view name) { return name == "ref6x3" || name == "chain6x3"; }

std::unique_ptr<FitnessFunction> make_fitness(std::string_view name, int steps, double beta) {
    if (name == "ref6x3") {
        if (steps != 1) throw std::invalid_argument("ref6x3 is single-step");
        return std::make_unique<Ref6x3>();
    }
    if (name == "chain6x3") return std::make_unique<Chain6x3>(steps, beta);
    throw std::invalid_argument("unknown fitness function '" + std::string(name) + "'");
}

std::unique_ptr<FitnessFunction> make_fitness(const SimConfig& config) {
    return make_fitness(config.fitness, config.steps_per_action, config.chain_beta);
}

} // namespace evoc
