#include <doctest.h>

#include <random>
#include <set>

#include "mcsched/benchmark.hpp"
#include "mcsched/ga.hpp"
#include "support.hpp"

using namespace mcsched;

namespace {

enum : TaskId { A, B, C, D, E, F, G, H, I };

Chromosome genes_of(std::initializer_list<CloudId> g) { return Chromosome{std::vector<CloudId>(g)}; }

}  // namespace

TEST_CASE("init_population draws genes within range, deterministically") {
    const auto demo14 = demo_instance(DemoVariant::fourteen_task);
    GaConfig cfg;
    cfg.population_size = 10;
    cfg.seed = 42;
    const auto pop = init_population(demo14, cfg);
    REQUIRE(pop.size() == 10);
    std::set<CloudId> seen;
    for (const auto& c : pop) {
        REQUIRE(c.size() == 14);
        for (CloudId g : c.genes) {
            CHECK(g < 4);
            seen.insert(g);
        }
    }
    CHECK(seen.size() == 4);
    CHECK(init_population(demo14, cfg) == pop);
    cfg.seed = 43;
    CHECK(init_population(demo14, cfg) != pop);

    const WorkloadInstance single(EtcMatrix(3, 1, {1, 2, 3}), DependencyDag(3));
    for (const auto& c : init_population(single, cfg)) CHECK(c == genes_of({0, 0, 0}));
}

TEST_CASE("roulette wheel weights are inverse fitness") {
    const std::vector<Duration> f{10, 20, 40, 40};
    const RouletteWheel wheel(f);
    CHECK(wheel.probability(0) == doctest::Approx(0.5));
    CHECK(wheel.probability(1) == doctest::Approx(0.25));
    CHECK(wheel.probability(2) == doctest::Approx(0.125));
    CHECK(wheel.probability(3) == doctest::Approx(0.125));

    Rng rng(5);
    std::vector<int> hits(4, 0);
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) ++hits[wheel.spin(rng)];
    const std::vector<double> expected{0.5, 0.25, 0.125, 0.125};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(hits[i] / double(kDraws) - expected[i]) < 0.01);
    }
}

TEST_CASE("roulette edge cases") {
    Rng rng(1);
    const std::vector<Duration> one{7};
    for (int i = 0; i < 100; ++i) CHECK(roulette_select(one, rng) == 0);

    const std::vector<Duration> flat(5, 3.0);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 50000; ++i) ++hits[roulette_select(flat, rng)];
    for (int h : hits) CHECK(std::abs(h / 50000.0 - 0.2) < 0.01);

    CHECK_THROWS_AS(RouletteWheel(std::vector<Duration>{1, 0, 2}), ZeroFitnessError);
    CHECK_THROWS_AS(RouletteWheel(std::vector<Duration>{1, -1}), ZeroFitnessError);
    CHECK_THROWS_AS(RouletteWheel(std::vector<Duration>{}), ConfigError);
}

TEST_CASE("one-point crossover") {
    const auto p1 = genes_of({1, 1, 2, 2});
    const auto p2 = genes_of({3, 3, 4, 4});
    auto [c1, c2] = one_point_crossover(p1, p2, 2);
    CHECK(c1 == genes_of({1, 1, 4, 4}));
    CHECK(c2 == genes_of({3, 3, 2, 2}));

    for (std::size_t cut = 1; cut < 4; ++cut) {
        auto [s1, s2] = one_point_crossover(p1, p1, cut);
        CHECK(s1 == p1);
        CHECK(s2 == p1);
    }

    CHECK_THROWS_AS(one_point_crossover(p1, genes_of({1, 2}), 1), LengthMismatchError);
    Rng rng(3);
    CHECK_THROWS_AS(one_point_crossover(p1, genes_of({1}), rng), LengthMismatchError);

    // Probability 0 returns the parents untouched.
    auto [k1, k2] = one_point_crossover(p1, p2, rng, 0.0);
    CHECK(k1 == p1);
    CHECK(k2 == p2);
}

TEST_CASE("load-balancing mutation on the demo table") {
    const auto demo = demo_instance();
    const Chromosome all0{std::vector<CloudId>(9, 0)};

    auto from_f = reassign_with_dependents(demo, all0, F, 1);
    CHECK(from_f == genes_of({0, 0, 0, 0, 0, 1, 1, 1, 1}));

    auto from_i = reassign_with_dependents(demo, all0, I, 1);
    CHECK(from_i == genes_of({0, 0, 0, 0, 0, 0, 0, 0, 1}));

    // Every random pick moves the chosen task and its dependents to cloud 1.
    Rng rng(9);
    std::set<std::vector<CloudId>> outcomes;
    for (int i = 0; i < 500; ++i) {
        const auto m = mutate_load_balance(demo, all0, rng);
        outcomes.insert(m.genes);
        for (TaskId t = 0; t < 9; ++t) CHECK((m[t] == 0 || m[t] == 1));
    }
    CHECK(outcomes.count(from_f.genes) == 1);
    CHECK(outcomes.count(from_i.genes) == 1);
    // One outcome per task: A..D drag E along, E..I as in the closure.
    CHECK(outcomes.size() == 9);

    const WorkloadInstance single(EtcMatrix(3, 1, {1, 2, 3}), DependencyDag(3));
    const auto zeros = genes_of({0, 0, 0});
    CHECK(mutate_load_balance(single, zeros, rng) == zeros);
}

TEST_CASE("operators preserve validity, provenance and locality") {
    std::mt19937_64 gen(21);
    Rng rng(22);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 2 + gen() % 12;
        const std::size_t q = 1 + gen() % 4;
        const auto inst = testing::random_instance(n, q, 0.3, gen);
        const auto p1 = testing::random_chromosome(n, q, gen);
        const auto p2 = testing::random_chromosome(n, q, gen);

        auto [c1, c2] = one_point_crossover(p1, p2, rng);
        REQUIRE_NOTHROW(inst.check(c1));
        REQUIRE_NOTHROW(inst.check(c2));
        for (std::size_t j = 0; j < n; ++j) {
            REQUIRE((c1[j] == p1[j] || c1[j] == p2[j]));
            REQUIRE((c2[j] == p1[j] || c2[j] == p2[j]));
            REQUIRE(c1[j] + c2[j] == p1[j] + p2[j]);
        }

        const auto loads = cloud_loads(inst, p1);
        const CloudId from = busiest_cloud(loads);
        const CloudId dest = least_utilized_cloud(loads);
        Rng replay = rng;
        const auto m = mutate_load_balance(inst, p1, rng);
        REQUIRE_NOTHROW(inst.check(m));
        if (from == dest) {
            REQUIRE(m == p1);
            continue;
        }
        // Re-draw the pick from the copied stream to learn which task moved.
        std::vector<TaskId> candidates;
        for (TaskId t = 0; t < n; ++t) {
            if (p1[t] == from) candidates.push_back(t);
        }
        const TaskId picked =
            candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(replay)];
        auto moved = descendants(inst.dag(), picked);
        moved.push_back(picked);
        for (TaskId t = 0; t < n; ++t) {
            const bool in_subtree = std::find(moved.begin(), moved.end(), t) != moved.end();
            REQUIRE(m[t] == (in_subtree ? dest : p1[t]));
        }
    }
}

TEST_CASE("GaConfig validation") {
    GaConfig c;
    CHECK_NOTHROW(c.validate());
    c.population_size = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.generations = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.crossover_prob = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.mutation_prob = -0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.elite_count = c.population_size;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("evolve finds the row minimum of a one-task instance") {
    const WorkloadInstance one(EtcMatrix(1, 3, {8, 3, 5}), DependencyDag(1));
    GaConfig cfg;
    cfg.population_size = 12;
    cfg.generations = 20;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        cfg.seed = seed;
        const auto r = evolve(one, cfg);
        CHECK(r.best_fitness == 3);
        CHECK(r.best_genes == genes_of({1}));
    }
}

TEST_CASE("evolve reaches the exhaustive optimum on a tiny edgeless instance") {
    std::mt19937_64 gen(31);
    const auto etc = testing::random_etc(5, 3, gen);
    const WorkloadInstance inst(etc, DependencyDag(5));
    Duration optimum = 0;
    for (TaskId t = 0; t < 5; ++t) {
        const auto row = etc.row(t);
        optimum += *std::min_element(row.begin(), row.end());
    }
    REQUIRE(optimum == testing::brute_force_optimum(etc, inst.dag()));

    GaConfig cfg;
    cfg.population_size = 30;
    cfg.generations = 100;
    const auto r = evolve(inst, cfg);
    CHECK(r.best_fitness == optimum);
}

TEST_CASE("evolve: elitism, trace bookkeeping, bounds and determinism") {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + gen() % 5;
        const std::size_t q = 1 + gen() % 3;
        const auto inst = testing::random_instance(n, q, 0.4, gen);
        const double optimum = testing::brute_force_optimum(inst.etc(), inst.dag());

        GaConfig cfg;
        cfg.population_size = 8 + gen() % 10;
        cfg.generations = 15;
        cfg.elite_count = 1 + gen() % 2;
        cfg.seed = gen();
        const auto r = evolve(inst, cfg);
        REQUIRE(r.trace.size() == cfg.generations + 1);
        for (std::size_t g = 1; g < r.trace.size(); ++g) REQUIRE(r.trace[g] <= r.trace[g - 1]);
        REQUIRE(r.best_fitness == r.trace.back());
        REQUIRE(r.best_fitness >= optimum);
        REQUIRE(r.best_fitness == testing::naive_fitness(inst.etc(), inst.dag(), r.best_genes.genes));
        REQUIRE(r.evaluations ==
                cfg.population_size + cfg.generations * (cfg.population_size - cfg.elite_count));

        auto threaded = cfg;
        threaded.threads = 3;
        const auto again = evolve(inst, threaded);
        REQUIRE(again.best_genes == r.best_genes);
        REQUIRE(again.trace == r.trace);
    }
}

TEST_CASE("evolve without elitism still reports the best chromosome ever seen") {
    std::mt19937_64 gen(51);
    const auto inst = testing::random_instance(8, 3, 0.3, gen);
    GaConfig cfg;
    cfg.elite_count = 0;
    cfg.population_size = 6;
    cfg.generations = 30;
    const auto r = evolve(inst, cfg);
    CHECK(r.best_fitness == *std::min_element(r.trace.begin(), r.trace.end()));
    CHECK(r.evaluations == 6 + 30 * 6);
}
