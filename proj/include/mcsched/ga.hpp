#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "mcsched/fitness.hpp"
#include "mcsched/model.hpp"

namespace mcsched {

struct GaConfig {
    std::size_t population_size = 50;
    std::size_t generations = 200;
    double crossover_prob = 0.8;
    double mutation_prob = 0.2;
    std::size_t elite_count = 2;
    std::uint64_t seed = 1;
    // Fitness evaluation workers. Has no effect on results.
    unsigned threads = 1;

    // Throws ConfigError.
    void validate() const;
};

struct GaResult {
    Chromosome best_genes;
    Duration best_fitness = 0;
    // Best fitness of the population after each generation; entry 0 is the
    // initial population, so the trace holds generations + 1 values.
    std::vector<Duration> trace;
    std::size_t evaluations = 0;
};

// `count` chromosomes with genes drawn uniformly from [0, clouds).
std::vector<Chromosome> init_population(const WorkloadInstance& instance, std::size_t count,
                                        Rng& rng);
std::vector<Chromosome> init_population(const WorkloadInstance& instance, const GaConfig& config);

// Fitness-proportionate wheel over a minimisation objective: slot i has
// weight 1 / fitness[i].
class RouletteWheel {
public:
    // Throws ZeroFitnessError for a non-positive or non-finite entry and
    // ConfigError for an empty list.
    explicit RouletteWheel(std::span<const Duration> fitnesses);

    std::size_t spin(Rng& rng) const;
    double probability(std::size_t index) const;
    std::size_t size() const noexcept { return cumulative_.size(); }

private:
    std::vector<double> cumulative_;
};

inline std::size_t roulette_select(std::span<const Duration> fitnesses, Rng& rng) {
    return RouletteWheel(fitnesses).spin(rng);
}

// child1 = p1[0, cut) ++ p2[cut, n), child2 = p2[0, cut) ++ p1[cut, n).
// Throws LengthMismatchError.
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      std::size_t cut);

// With probability `probability`, cuts at a point drawn uniformly from
// [1, n-1]; otherwise returns copies of the parents. Requires n >= 2 when
// crossing.
std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      Rng& rng, double probability = 1.0);

// Moves `task` and every task that transitively depends on it to
// `destination`. Ancestors are never touched.
Chromosome reassign_with_dependents(const WorkloadInstance& instance, Chromosome genes,
                                    TaskId task, CloudId destination);

// Load-balancing mutation: picks a task uniformly from the busiest cloud and
// moves it, together with its dependents, to the least utilised cloud. Loads
// are recomputed from `genes`. Returns the input when the busiest and least
// utilised clouds coincide.
Chromosome mutate_load_balance(const WorkloadInstance& instance, const Chromosome& genes,
                               Rng& rng);

// The generational loop: elitism, roulette selection with replacement,
// one-point crossover per pair, mutation per child. Deterministic for a given
// (instance, config) regardless of config.threads.
GaResult evolve(const WorkloadInstance& instance, const GaConfig& config);

}  // namespace mcsched
