#include "evoc/experiments.hpp"
#include "evoc/fitness.hpp"
#include "evoc/metrics.hpp"

#include <doctest.h>

using namespace evoc;

namespace {

WorldState world_of(int n) {
    WorldState w;
    w.width = n;
    w.height = 1;
    for (int id = 0; id < n; ++id) {
        AgentState a;
        a.id = id;
        a.idea = Action::rest(6);
        w.agents.push_back(a);
    }
    return w;
}

std::vector<IterationMetrics> series_of(std::initializer_list<double> means) {
    std::vector<IterationMetrics> s;
    int i = 0;
    for (double m : means) {
        IterationMetrics row;
        row.iteration = i++;
        row.mean_fitness = m;
        s.push_back(row);
    }
    return s;
}

std::vector<IterationMetrics> diversities(std::initializer_list<int> ds) {
    std::vector<IterationMetrics> s;
    int i = 0;
    for (int d : ds) {
        IterationMetrics row;
        row.iteration = i++;
        row.diversity = d;
        s.push_back(row);
    }
    return s;
}

} // namespace

TEST_CASE("diversity counts distinct actions") {
    auto w = world_of(100);
    CHECK(diversity(w) == 1);

    for (int id = 0; id < 100; ++id) {
        int code = id;
        for (std::size_t i = 0; i < 6; ++i) {
            w.agents[static_cast<std::size_t>(id)].idea[i] = static_cast<PartState>(code % 3);
            code /= 3;
        }
    }
    CHECK(diversity(w) == 100);

    for (int id = 0; id < 100; ++id)
        w.agents[static_cast<std::size_t>(id)].idea =
            Action(std::vector<PartState>(6, id < 50 ? PartState::Up : PartState::Down));
    CHECK(diversity(w) == 2);

    // multi-step: sequences equal in one step but not another are distinct
    auto m = world_of(2);
    m.agents[0].idea = Action::rest(6, 2);
    m.agents[1].idea = Action::rest(6, 2);
    m.agents[1].idea[7] = PartState::Up;
    CHECK(diversity(m) == 2);
}

TEST_CASE("mean and max fitness") {
    auto w = world_of(10);
    CHECK(mean_fitness(w) == 0.0);
    for (int id = 0; id < 10; ++id) w.agents[static_cast<std::size_t>(id)].idea_fitness = id < 5 ? 14.0 : 0.0;
    CHECK(mean_fitness(w) == 7.0);
    CHECK(max_fitness_now(w) == 14.0);
}

TEST_CASE("segregation index") {
    auto w = world_of(10);
    for (auto& a : w.agents) a.p_invent = 0.5;
    auto s = segregation_index(w);
    CHECK(s.frac_low == 0.0);
    CHECK(s.frac_high == 0.0);

    for (int id = 0; id < 10; ++id) w.agents[static_cast<std::size_t>(id)].p_invent = id < 5 ? 0.0 : 1.0;
    s = segregation_index(w);
    CHECK(s.frac_low == 0.5);
    CHECK(s.frac_high == 0.5);

    for (auto& a : w.agents) a.p_invent = 0.05;
    s = segregation_index(w);
    CHECK(s.frac_low == 1.0);
    CHECK(s.frac_high == 0.0);

    // 0.5 - 4 * 0.1 accumulates to 0.10000000000000003; still a conformer
    double p = 0.5;
    for (int k = 0; k < 4; ++k) p -= 0.1;
    for (auto& a : w.agents) a.p_invent = p;
    CHECK(segregation_index(w).frac_low == 1.0);
}

TEST_CASE("time_to_threshold") {
    CHECK(time_to_threshold(series_of({0, 5, 13, 14}), 0.9, 14.0) == 2);
    CHECK_FALSE(time_to_threshold(series_of({0, 5, 6, 7}), 0.9, 14.0).has_value());
    CHECK(time_to_threshold(series_of({0, 5}), 1e-300, 1e-300) == 0);

    Rng r(31);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<IterationMetrics> s;
        for (int i = 0; i < 30; ++i) {
            IterationMetrics row;
            row.iteration = i;
            row.mean_fitness = r.uniform01() * 14.0;
            s.push_back(row);
        }
        const double lo = 0.05 + 0.9 * r.uniform01();
        const double hi = lo + (1.0 - lo) * r.uniform01();
        auto a = time_to_threshold(s, lo, 14.0);
        auto b = time_to_threshold(s, hi, 14.0);
        if (b) REQUIRE((a && *a <= *b));
    }
}

TEST_CASE("peak_diversity") {
    auto p = peak_diversity(diversities({1, 40, 80, 60, 20}));
    CHECK(p.iteration == 2);
    CHECK(p.value == 80);
    p = peak_diversity(diversities({1, 1, 1}));
    CHECK(p.iteration == 0);
    CHECK(p.value == 1);
    p = peak_diversity(diversities({1, 5, 5, 2}));
    CHECK(p.iteration == 1);
    CHECK(p.value == 5);
}

TEST_CASE("run-level metric invariants") {
    for (const char* name : {"ref6x3", "chain6x3"}) {
        SimConfig c;
        c.fitness = name;
        c.steps_per_action = std::string(name) == "ref6x3" ? 1 : 3;
        c.creator_fraction = 0.7;
        c.creator_p_invent = 0.8;
        const double f_max = make_fitness(c)->max_fitness();
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto run = run_sim(c, seed);
            REQUIRE(run.series.front().diversity == 1);
            for (const auto& m : run.series) {
                REQUIRE(m.diversity >= 1);
                REQUIRE(m.diversity <= 100);
                REQUIRE(m.mean_fitness <= m.max_fitness);
                REQUIRE(m.max_fitness <= f_max);
                // SR off: p never changes
                REQUIRE(m.frac_p_low == run.series.front().frac_p_low);
                REQUIRE(m.frac_p_high == run.series.front().frac_p_high);
                REQUIRE(m.frac_p_low + m.frac_p_high <= 1.0);
            }
        }
    }
}
