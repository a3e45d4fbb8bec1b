#include "evoc/dynamics.hpp"
#include "evoc/metrics.hpp"

#include <doctest.h>

#include <cmath>

using namespace evoc;

namespace {

constexpr auto R = PartState::Rest;
constexpr auto U = PartState::Up;
constexpr auto D = PartState::Down;

AgentState fresh_agent(double p, int positions = 6) {
    AgentState a;
    a.idea = Action::rest(positions);
    a.p_invent = p;
    a.trends = TrendModel(static_cast<std::size_t>(positions));
    return a;
}

// 3x3 world with hand-set fitness values; ideas are arbitrary distinct tags.
WorldState small_world(const std::array<double, 9>& fitness) {
    WorldState w;
    w.width = 3;
    w.height = 3;
    for (int id = 0; id < 9; ++id) {
        AgentState a = fresh_agent(0.0);
        a.id = id;
        a.idea[0] = static_cast<PartState>(id % 3);
        a.idea[1] = static_cast<PartState>(id / 3);
        a.idea_fitness = fitness[static_cast<std::size_t>(id)];
        w.agents.push_back(a);
    }
    w.prev_mean_fitness = mean_fitness(w);
    return w;
}

} // namespace

TEST_CASE("decide_acquire") {
    Rng rng(1);
    auto never = fresh_agent(0.0);
    auto always = fresh_agent(1.0);
    for (int i = 0; i < 2000; ++i) {
        REQUIRE(decide_acquire(never, rng) == AcquireChoice::Imitate);
        REQUIRE(decide_acquire(always, rng) == AcquireChoice::Invent);
    }

    auto half = fresh_agent(0.5);
    int invents = 0;
    for (int i = 0; i < 10000; ++i) invents += decide_acquire(half, rng) == AcquireChoice::Invent;
    CHECK(std::abs(invents / 10000.0 - 0.5) <= 0.02);

    Rng a(9), b(9);
    decide_acquire(half, a);
    b.next();
    CHECK(a.state() == b.state());
}

TEST_CASE("invent with a vanishing mutation rate keeps the idea") {
    SimConfig c;
    c.mutation_rate = 1e-12;
    Rng rng(4);
    auto agent = fresh_agent(1.0);
    agent.idea = Action({U, D, U, R, D, U});
    for (int i = 0; i < 1000; ++i) REQUIRE(invent(agent, c, rng) == agent.idea);
}

TEST_CASE("invent with mu = 1 and no bias redraws uniformly") {
    SimConfig c;
    c.mutation_rate = 1.0;
    c.trend_bias_enabled = false;
    Rng rng(8);
    auto agent = fresh_agent(1.0);
    std::array<std::array<int, 3>, 6> counts{};
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        auto cand = invent(agent, c, rng);
        for (std::size_t i = 0; i < 6; ++i) counts[i][static_cast<std::size_t>(cand[i])]++;
    }
    for (const auto& part : counts)
        for (int v : part) CHECK(std::abs(v / static_cast<double>(n) - 1.0 / 3.0) <= 0.02);
}

TEST_CASE("invent draw count: one per position plus one per replacement") {
    SimConfig c;
    c.mutation_rate = 1.0;
    auto agent = fresh_agent(1.0);
    Rng a(17), b(17);
    invent(agent, c, a);
    for (int i = 0; i < 12; ++i) b.next();
    CHECK(a.state() == b.state());
}

TEST_CASE("trend-biased replacement weights") {
    TrendModel t(6);
    auto w0 = replacement_weights(t, 0, true);
    for (double x : w0) CHECK(x == doctest::Approx(1.0 / 3.0));

    update_trends(t, Action({U, U, U, U, U, U}), 10.0);
    auto w = replacement_weights(t, 2, true);
    CHECK(w[static_cast<int>(R)] == doctest::Approx(1.0 / 13.0));
    CHECK(w[static_cast<int>(U)] == doctest::Approx(11.0 / 13.0));
    CHECK(w[static_cast<int>(D)] == doctest::Approx(1.0 / 13.0));

    auto off = replacement_weights(t, 2, false);
    for (double x : off) CHECK(x == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("update_trends") {
    TrendModel t(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (auto v : {R, U, D}) CHECK(t.estimate(i, v) == 0.0);

    update_trends(t, Action({U, U, U, U, U, U}), 14.0);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(t.obs_count(i, U) == 1);
        CHECK(t.fitness_sum(i, U) == 14.0);
        CHECK(t.obs_count(i, R) == 0);
        CHECK(t.fitness_sum(i, R) == 0.0);
    }
    update_trends(t, Action({U, U, U, U, U, U}), 10.0);
    CHECK(t.estimate(0, U) == 12.0);
    CHECK_THROWS(update_trends(t, Action::rest(6), -1.0));
}

TEST_CASE("trend assessment of invented candidates") {
    auto agent = fresh_agent(1.0);
    Action moving({U, U, U, U, U, U});
    CHECK(accept_invention(agent, moving, InventionAssessment::Trend)); // no data: everything looks equal

    update_trends(agent.trends, Action::rest(6), 0.0);
    update_trends(agent.trends, moving, 14.0);
    agent.idea = moving;
    CHECK(perceived_value(agent.trends, moving) == 6 * 14.0);
    CHECK_FALSE(accept_invention(agent, Action::rest(6), InventionAssessment::Trend));
    CHECK(accept_invention(agent, Action::rest(6), InventionAssessment::None));
}

TEST_CASE("imitate") {
    SUBCASE("everyone at zero keeps their idea") {
        auto w = small_world({0, 0, 0, 0, 0, 0, 0, 0, 0});
        for (const auto& a : w.agents) CHECK_FALSE(imitate(w, a).has_value());
    }
    SUBCASE("strictly fitter neighbour is copied") {
        // agent 4 (centre): neighbours 1, 5, 7, 3
        auto w = small_world({0, 2, 0, 1, 3, 5, 0, 4, 0});
        CHECK(imitate(w, w.agents[4]) == 5);
    }
    SUBCASE("ties go to the lowest id") {
        auto w = small_world({0, 2, 0, 5, 3, 5, 0, 4, 0});
        CHECK(imitate(w, w.agents[4]) == 3);
    }
    SUBCASE("equal fitness is not an improvement") {
        auto w = small_world({0, 3, 0, 1, 3, 2, 0, 3, 0});
        CHECK_FALSE(imitate(w, w.agents[4]).has_value());
    }
}

TEST_CASE("sr_update") {
    CHECK(sr_update(0.5, 3.0, 2.0, 0.1) == doctest::Approx(0.6));
    CHECK(sr_update(0.95, 5.0, 2.0, 0.1) == 1.0);
    CHECK(sr_update(0.05, 2.0, 2.0, 0.1) == 0.0);
    CHECK(sr_update(0.5, 1.0, 2.0, 0.1) == doctest::Approx(0.4));

    Rng r(123);
    for (int trial = 0; trial < 200; ++trial) {
        double p = r.uniform01();
        for (int k = 0; k < 100; ++k) {
            p = sr_update(p, r.uniform01() * 14, r.uniform01() * 14, r.uniform01());
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
        }
    }
}

TEST_CASE("a society of pure imitators is a fixed point") {
    SimConfig c;
    c.creator_fraction = 0.0;
    Ref6x3 f;
    Rng rng(3);
    auto w = new_world(c, f, rng);
    const auto start = w;
    for (int i = 0; i < 50; ++i) {
        auto m = step(w, c, f, rng);
        REQUIRE(m.mean_fitness == 0.0);
        REQUIRE(m.diversity == 1);
    }
    for (std::size_t k = 0; k < w.agents.size(); ++k) CHECK(w.agents[k].idea == start.agents[k].idea);
    CHECK(w.iteration == 50);
}

TEST_CASE("imitation alone never lowers fitness") {
    SimConfig c;
    c.creator_fraction = 0.0;
    Ref6x3 f;
    Rng gen(55);
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng(gen.next());
        auto w = new_world(c, f, rng);
        for (auto& a : w.agents) {
            for (std::size_t i = 0; i < a.idea.size(); ++i) a.idea[i] = static_cast<PartState>(gen.range(3));
            a.idea_fitness = f.evaluate(a.idea);
        }
        w.prev_mean_fitness = mean_fitness(w);
        for (int it = 0; it < 10; ++it) {
            const auto before = w;
            step(w, c, f, rng);
            for (std::size_t k = 0; k < w.agents.size(); ++k)
                REQUIRE(w.agents[k].idea_fitness >= before.agents[k].idea_fitness);
            REQUIRE(mean_fitness(w) >= mean_fitness(before));
        }
    }
}

TEST_CASE("step is deterministic") {
    SimConfig c;
    c.creator_fraction = 0.6;
    c.sr_enabled = true;
    Ref6x3 f;
    Rng r1(77), r2(77);
    auto w1 = new_world(c, f, r1);
    auto w2 = new_world(c, f, r2);
    for (int i = 0; i < 30; ++i) {
        auto m1 = step(w1, c, f, r1);
        auto m2 = step(w2, c, f, r2);
        REQUIRE(m1 == m2);
    }
    CHECK(w1 == w2);
    CHECK(r1.state() == r2.state());
}

TEST_CASE("step keeps idea_fitness consistent and the population fixed") {
    SimConfig c;
    c.fitness = "chain6x3";
    c.steps_per_action = 3;
    Chain6x3 f(3);
    Rng rng(12);
    auto w = new_world(c, f, rng);
    for (int i = 0; i < 40; ++i) {
        step(w, c, f, rng);
        REQUIRE(w.size() == 100);
        for (const auto& a : w.agents) REQUIRE(a.idea_fitness == f.evaluate(a.idea));
    }
}

TEST_CASE("invention can lower an agent's fitness") {
    for (auto mode : {InventionAssessment::None, InventionAssessment::Trend}) {
        SimConfig c;
        c.creator_fraction = 1.0;
        c.creator_p_invent = 1.0;
        c.invention_assessment = mode;
        Ref6x3 f;
        bool dropped = false;
        for (std::uint64_t seed = 1; seed <= 5 && !dropped; ++seed) {
            Rng rng(seed);
            auto w = new_world(c, f, rng);
            for (int it = 0; it < 40 && !dropped; ++it) {
                const auto before = w;
                step(w, c, f, rng);
                for (std::size_t k = 0; k < w.agents.size(); ++k)
                    if (w.agents[k].idea_fitness < before.agents[k].idea_fitness) dropped = true;
            }
        }
        CHECK(dropped);
    }
}

TEST_CASE("SR with all fitness equal lowers every p by delta") {
    SimConfig c;
    c.creator_fraction = 1.0;
    c.creator_p_invent = 0.5;
    c.mutation_rate = 1e-12;
    c.sr_enabled = true;
    Ref6x3 f;
    Rng rng(6);
    auto w = new_world(c, f, rng);
    step(w, c, f, rng);
    for (const auto& a : w.agents) CHECK(a.p_invent == doctest::Approx(0.4));
}

TEST_CASE("mean fitness improves over a default run") {
    SimConfig c;
    c.creator_fraction = 1.0;
    c.creator_p_invent = 0.5;
    Ref6x3 f;
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        auto w = new_world(c, f, rng);
        const double start = mean_fitness(w);
        IterationMetrics m;
        for (int i = 0; i < 100; ++i) m = step(w, c, f, rng);
        improved += m.mean_fitness > start;
    }
    CHECK(improved >= 95);
}
