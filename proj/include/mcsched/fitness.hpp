#pragma once

#include <vector>

#include "mcsched/model.hpp"

namespace mcsched {

struct FitnessReport {
    std::vector<Duration> waiting;
    std::vector<Duration> completion;
    // Sum of all completion times. This is the GA objective.
    Duration makespan_sum = 0;
    // Largest completion time. Reported only; never used for selection.
    Duration makespan_max = 0;
    // Total execution time assigned to each cloud.
    std::vector<Duration> cloud_load;
};

// Latest completion among the parents of `task`, or 0 for a task without
// parents. Cloud contention is not modelled: tasks sharing a cloud do not
// queue behind each other. Evaluates only the ancestors of `task`.
Duration waiting_time(const WorkloadInstance& instance, const Chromosome& genes, TaskId task);

Duration completion_time(const WorkloadInstance& instance, const Chromosome& genes, TaskId task);

// Single pass in evaluation order. Throws LengthMismatchError or
// GeneRangeError for an invalid chromosome.
FitnessReport evaluate(const WorkloadInstance& instance, const Chromosome& genes);

// Objective only, without allocating a report. Same checks as evaluate.
Duration fitness(const WorkloadInstance& instance, const Chromosome& genes);

// Objective of every chromosome in `population`, written to `out`. Work is
// split into contiguous chunks across `threads` workers; results do not
// depend on the thread count.
void fitness_batch(const WorkloadInstance& instance, std::span<const Chromosome> population,
                   std::span<Duration> out, unsigned threads = 1);

// Cloud loads alone (no DAG pass).
std::vector<Duration> cloud_loads(const WorkloadInstance& instance, const Chromosome& genes);

// argmax / argmin of the loads, lowest index on ties.
CloudId busiest_cloud(std::span<const Duration> loads);
CloudId least_utilized_cloud(std::span<const Duration> loads);
inline CloudId busiest_cloud(const FitnessReport& report) { return busiest_cloud(report.cloud_load); }
inline CloudId least_utilized_cloud(const FitnessReport& report) {
    return least_utilized_cloud(report.cloud_load);
}

}  // namespace mcsched
