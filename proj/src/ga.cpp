#include "mcsched/ga.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mcsched {

void GaConfig::validate() const {
    if (population_size < 2) throw ConfigError("population size must be at least 2");
    if (generations < 1) throw ConfigError("generations must be at least 1");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
        throw ConfigError("crossover probability must lie in [0, 1]");
    }
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
        throw ConfigError("mutation probability must lie in [0, 1]");
    }
    if (elite_count >= population_size) {
        throw ConfigError("elite count must be smaller than the population size");
    }
}

std::vector<Chromosome> init_population(const WorkloadInstance& instance, std::size_t count,
                                        Rng& rng) {
    std::uniform_int_distribution<CloudId> cloud(0, static_cast<CloudId>(instance.clouds() - 1));
    std::vector<Chromosome> population(count);
    for (auto& c : population) {
        c.genes.resize(instance.tasks());
        for (auto& g : c.genes) g = cloud(rng);
    }
    return population;
}

std::vector<Chromosome> init_population(const WorkloadInstance& instance, const GaConfig& config) {
    Rng rng(config.seed);
    return init_population(instance, config.population_size, rng);
}

RouletteWheel::RouletteWheel(std::span<const Duration> fitnesses) {
    if (fitnesses.empty()) throw ConfigError("roulette wheel needs at least one candidate");
    cumulative_.reserve(fitnesses.size());
    double total = 0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        if (!(fitnesses[i] > 0.0) || !std::isfinite(fitnesses[i])) throw ZeroFitnessError(i);
        total += 1.0 / fitnesses[i];
        cumulative_.push_back(total);
    }
}

std::size_t RouletteWheel::spin(Rng& rng) const {
    std::uniform_real_distribution<double> dist(0.0, cumulative_.back());
    const double x = dist(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
}

double RouletteWheel::probability(std::size_t index) const {
    const double lo = index == 0 ? 0.0 : cumulative_[index - 1];
    return (cumulative_[index] - lo) / cumulative_.back();
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      std::size_t cut) {
    if (p1.size() != p2.size()) {
        throw LengthMismatchError("crossover parents have lengths " + std::to_string(p1.size()) +
                                  " and " + std::to_string(p2.size()));
    }
    cut = std::min(cut, p1.size());
    std::pair<Chromosome, Chromosome> children{p1, p2};
    std::copy(p2.genes.begin() + cut, p2.genes.end(), children.first.genes.begin() + cut);
    std::copy(p1.genes.begin() + cut, p1.genes.end(), children.second.genes.begin() + cut);
    return children;
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& p1, const Chromosome& p2,
                                                      Rng& rng, double probability) {
    if (p1.size() != p2.size()) {
        throw LengthMismatchError("crossover parents have lengths " + std::to_string(p1.size()) +
                                  " and " + std::to_string(p2.size()));
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) >= probability || p1.size() < 2) return {p1, p2};
    std::uniform_int_distribution<std::size_t> point(1, p1.size() - 1);
    return one_point_crossover(p1, p2, point(rng));
}

Chromosome reassign_with_dependents(const WorkloadInstance& instance, Chromosome genes,
                                    TaskId task, CloudId destination) {
    genes[task] = destination;
    for (TaskId d : instance.descendants_of(task)) genes[d] = destination;
    return genes;
}

Chromosome mutate_load_balance(const WorkloadInstance& instance, const Chromosome& genes,
                               Rng& rng) {
    const auto loads = cloud_loads(instance, genes);
    const CloudId busiest = busiest_cloud(loads);
    const CloudId idle = least_utilized_cloud(loads);
    if (busiest == idle) return genes;

    std::vector<TaskId> on_busiest;
    for (TaskId t = 0; t < genes.size(); ++t) {
        if (genes[t] == busiest) on_busiest.push_back(t);
    }
    if (on_busiest.empty()) return genes;

    std::uniform_int_distribution<std::size_t> pick(0, on_busiest.size() - 1);
    return reassign_with_dependents(instance, genes, on_busiest[pick(rng)], idle);
}

GaResult evolve(const WorkloadInstance& instance, const GaConfig& config) {
    config.validate();
    const std::size_t l = config.population_size;

    Rng rng(config.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<Chromosome> population = init_population(instance, l, rng);
    std::vector<Duration> fit(l);
    fitness_batch(instance, population, fit, config.threads);

    GaResult result;
    result.evaluations = l;
    result.trace.reserve(config.generations + 1);

    std::vector<std::size_t> ranking(l);
    auto absorb = [&] {
        std::iota(ranking.begin(), ranking.end(), std::size_t{0});
        std::stable_sort(ranking.begin(), ranking.end(),
                         [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });
        const std::size_t top = ranking.front();
        result.trace.push_back(fit[top]);
        if (result.best_genes.size() == 0 || fit[top] < result.best_fitness) {
            result.best_fitness = fit[top];
            result.best_genes = population[top];
        }
    };
    absorb();

    std::vector<Chromosome> next;
    std::vector<Duration> next_fit;
    next.reserve(l);
    next_fit.reserve(l);
    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        next.clear();
        next_fit.clear();
        for (std::size_t e = 0; e < config.elite_count; ++e) {
            next.push_back(population[ranking[e]]);
            next_fit.push_back(fit[ranking[e]]);
        }

        const RouletteWheel wheel(fit);
        while (next.size() < l) {
            const auto& a = population[wheel.spin(rng)];
            const auto& b = population[wheel.spin(rng)];
            auto [c1, c2] = one_point_crossover(a, b, rng, config.crossover_prob);
            if (coin(rng) < config.mutation_prob) c1 = mutate_load_balance(instance, c1, rng);
            next.push_back(std::move(c1));
            if (next.size() < l) {
                if (coin(rng) < config.mutation_prob) c2 = mutate_load_balance(instance, c2, rng);
                next.push_back(std::move(c2));
            }
        }

        const std::size_t elites = config.elite_count;
        next_fit.resize(l);
        fitness_batch(instance, std::span<const Chromosome>(next).subspan(elites),
                      std::span<Duration>(next_fit).subspan(elites), config.threads);
        result.evaluations += l - elites;

        population.swap(next);
        fit.swap(next_fit);
        absorb();
    }
    return result;
}

}  // namespace mcsched
