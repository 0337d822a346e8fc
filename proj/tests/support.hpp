#pragma once

// Test-only oracles. These deliberately read the raw ETC cells and the dense
// dependency matrix and never call into the library's evaluator.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "mcsched/model.hpp"

namespace mcsched::testing {

// Completion times by direct recursion over the dependency matrix: a task
// finishes at (latest parent finish, or 0) + its own execution time.
inline std::vector<double> naive_completions(const EtcMatrix& etc, const DependencyDag& dag,
                                             const std::vector<CloudId>& genes) {
    const std::size_t n = dag.tasks();
    std::vector<std::optional<double>> memo(n);
    std::function<double(std::size_t)> finish = [&](std::size_t i) -> double {
        if (memo[i]) return *memo[i];
        double wait = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (dag.depends(static_cast<TaskId>(i), static_cast<TaskId>(k))) {
                wait = std::max(wait, finish(k));
            }
        }
        const double c = wait + etc.cells()[i * etc.clouds() + genes[i]];
        memo[i] = c;
        return c;
    };
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = finish(i);
    return out;
}

inline double naive_fitness(const EtcMatrix& etc, const DependencyDag& dag,
                            const std::vector<CloudId>& genes) {
    const auto c = naive_completions(etc, dag, genes);
    double sum = 0;
    for (double x : c) sum += x;
    return sum;
}

// Calls visit(genes) for every one of q^n chromosomes.
template <typename Visit>
void for_each_chromosome(std::size_t n, std::size_t q, Visit&& visit) {
    std::vector<CloudId> genes(n, 0);
    while (true) {
        visit(genes);
        std::size_t pos = 0;
        while (pos < n && ++genes[pos] == q) genes[pos++] = 0;
        if (pos == n) return;
    }
}

inline double brute_force_optimum(const EtcMatrix& etc, const DependencyDag& dag) {
    double best = std::numeric_limits<double>::infinity();
    for_each_chromosome(dag.tasks(), etc.clouds(), [&](const std::vector<CloudId>& g) {
        best = std::min(best, naive_fitness(etc, dag, g));
    });
    return best;
}

// Random DAG: edges only go forward along a random permutation of the tasks.
inline DependencyDag random_dag(std::size_t n, double edge_prob, std::mt19937_64& rng) {
    std::vector<TaskId> perm(n);
    std::iota(perm.begin(), perm.end(), TaskId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution edge(edge_prob);
    DependencyDag dag(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (edge(rng)) dag.add_edge(perm[a], perm[b]);
        }
    }
    return dag;
}

// Integer-valued cells keep every sum exact.
inline EtcMatrix random_etc(std::size_t n, std::size_t q, std::mt19937_64& rng, int max_cell = 20) {
    std::uniform_int_distribution<int> cell(1, max_cell);
    std::vector<double> cells(n * q);
    for (auto& c : cells) c = cell(rng);
    return EtcMatrix(n, q, std::move(cells));
}

inline WorkloadInstance random_instance(std::size_t n, std::size_t q, double edge_prob,
                                        std::mt19937_64& rng) {
    auto dag = random_dag(n, edge_prob, rng);
    return WorkloadInstance(random_etc(n, q, rng), std::move(dag));
}

inline Chromosome random_chromosome(std::size_t n, std::size_t q, std::mt19937_64& rng) {
    std::uniform_int_distribution<CloudId> g(0, static_cast<CloudId>(q - 1));
    Chromosome c;
    c.genes.resize(n);
    for (auto& x : c.genes) x = g(rng);
    return c;
}

inline std::vector<double> naive_loads(const EtcMatrix& etc, const std::vector<CloudId>& genes) {
    std::vector<double> load(etc.clouds(), 0.0);
    for (std::size_t i = 0; i < genes.size(); ++i) load[genes[i]] += etc.cells()[i * etc.clouds() + genes[i]];
    return load;
}

inline CloudId first_max(const std::vector<double>& v) {
    CloudId best = 0;
    for (CloudId c = 1; c < v.size(); ++c) {
        if (v[c] > v[best]) best = c;
    }
    return best;
}

inline CloudId first_min(const std::vector<double>& v) {
    CloudId best = 0;
    for (CloudId c = 1; c < v.size(); ++c) {
        if (v[c] < v[best]) best = c;
    }
    return best;
}

// reach[t] is true when t transitively waits for `root`.
inline std::vector<bool> naive_descendants(const DependencyDag& dag, TaskId root) {
    const std::size_t n = dag.tasks();
    std::vector<bool> reach(n, false);
    std::vector<TaskId> stack{root};
    while (!stack.empty()) {
        const TaskId u = stack.back();
        stack.pop_back();
        for (TaskId v = 0; v < n; ++v) {
            if (!reach[v] && dag.depends(v, u)) {
                reach[v] = true;
                stack.push_back(v);
            }
        }
    }
    return reach;
}

}  // namespace mcsched::testing
