#include "mcsched/baselines.hpp"

#include <algorithm>

namespace mcsched {

GaResult random_search(const WorkloadInstance& instance, std::size_t budget, std::uint64_t seed,
                       unsigned threads) {
    if (budget < 1) throw ConfigError("random search budget must be at least 1");
    constexpr std::size_t kBatch = 1024;

    Rng rng(seed);
    GaResult result;
    result.trace.reserve(budget);
    std::vector<Duration> fit;
    for (std::size_t done = 0; done < budget;) {
        const std::size_t count = std::min(kBatch, budget - done);
        auto batch = init_population(instance, count, rng);
        fit.resize(count);
        fitness_batch(instance, batch, fit, threads);
        for (std::size_t i = 0; i < count; ++i) {
            if (result.trace.empty() || fit[i] < result.best_fitness) {
                result.best_fitness = fit[i];
                result.best_genes = std::move(batch[i]);
            }
            result.trace.push_back(result.best_fitness);
        }
        done += count;
    }
    result.evaluations = budget;
    return result;
}

Chromosome greedy_min_etc(const WorkloadInstance& instance) {
    Chromosome genes;
    genes.genes.resize(instance.tasks());
    for (TaskId t = 0; t < instance.tasks(); ++t) {
        const auto row = instance.etc().row(t);
        genes[t] = static_cast<CloudId>(std::min_element(row.begin(), row.end()) - row.begin());
    }
    return genes;
}

}  // namespace mcsched
