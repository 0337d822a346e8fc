#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "mcsched/errors.hpp"

namespace mcsched {

using TaskId = std::uint32_t;
using CloudId = std::uint32_t;
using AppId = std::uint32_t;

// Seeded generator shared by every stochastic routine.
using Rng = std::mt19937_64;

// Execution time in milliseconds.
using Duration = double;

// Expected-time-to-compute matrix: cell (task, cloud) is the execution time of
// `task` on `cloud`. Stored task-major.
class EtcMatrix {
public:
    EtcMatrix() = default;
    // Throws DimensionError on a size mismatch and PositivityError on any cell
    // that is not strictly positive and finite.
    EtcMatrix(std::size_t tasks, std::size_t clouds, std::vector<Duration> cells);

    std::size_t tasks() const noexcept { return tasks_; }
    std::size_t clouds() const noexcept { return clouds_; }

    Duration operator()(TaskId task, CloudId cloud) const noexcept {
        return cells_[static_cast<std::size_t>(task) * clouds_ + cloud];
    }
    std::span<const Duration> row(TaskId task) const noexcept {
        return {cells_.data() + static_cast<std::size_t>(task) * clouds_, clouds_};
    }
    std::span<const Duration> cells() const noexcept { return cells_; }

    friend bool operator==(const EtcMatrix&, const EtcMatrix&) = default;

private:
    std::size_t tasks_ = 0;
    std::size_t clouds_ = 0;
    std::vector<Duration> cells_;
};

// Precedence matrix with the row-is-child convention: depends(i, j) means
// task i waits for task j. Construction only checks shape; acyclicity is
// checked by validate_dag.
class DependencyDag {
public:
    DependencyDag() = default;
    explicit DependencyDag(std::size_t tasks) : tasks_(tasks), dep_(tasks * tasks, 0) {}
    // `cells` is row-major n*n with values in {0, 1}; throws NonBinaryError.
    DependencyDag(std::size_t tasks, std::vector<std::uint8_t> cells);

    std::size_t tasks() const noexcept { return tasks_; }

    bool depends(TaskId child, TaskId parent) const noexcept {
        return dep_[static_cast<std::size_t>(child) * tasks_ + parent] != 0;
    }
    void add_edge(TaskId parent, TaskId child);

    std::size_t edge_count() const noexcept;
    std::span<const std::uint8_t> cells() const noexcept { return dep_; }

    friend bool operator==(const DependencyDag&, const DependencyDag&) = default;

private:
    std::size_t tasks_ = 0;
    std::vector<std::uint8_t> dep_;
};

// Throws SelfLoopError for a nonzero diagonal and CycleError when peeling
// zero-in-degree tasks leaves a residue.
void validate_dag(const DependencyDag& dag);

// Kahn's order, lowest ready index first. Throws like validate_dag.
std::vector<TaskId> topological_order(const DependencyDag& dag);

// Every task that transitively depends on `task`, ascending, excluding `task`.
std::vector<TaskId> descendants(const DependencyDag& dag, TaskId task);

// Every task `task` transitively depends on, ascending, excluding `task`.
std::vector<TaskId> ancestors(const DependencyDag& dag, TaskId task);

// Direct parents of `task`, ascending.
std::vector<TaskId> parents(const DependencyDag& dag, TaskId task);

// One candidate schedule: genes[t] is the cloud task t runs on.
struct Chromosome {
    std::vector<CloudId> genes;

    std::size_t size() const noexcept { return genes.size(); }
    CloudId operator[](std::size_t i) const noexcept { return genes[i]; }
    CloudId& operator[](std::size_t i) noexcept { return genes[i]; }

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

// A validated scheduling problem. Immutable; caches the evaluation order,
// parent lists and transitive descendant sets so the hot paths never touch
// the dense matrix.
class WorkloadInstance {
public:
    WorkloadInstance() = default;
    // Throws DimensionError, SelfLoopError, CycleError or
    // CrossApplicationEdgeError. An empty `app_of` puts every task in
    // application 0.
    WorkloadInstance(EtcMatrix etc, DependencyDag dag, std::vector<AppId> app_of);
    // All tasks in application 0.
    WorkloadInstance(EtcMatrix etc, DependencyDag dag);

    std::size_t tasks() const noexcept { return etc_.tasks(); }
    std::size_t clouds() const noexcept { return etc_.clouds(); }
    std::size_t applications() const noexcept { return applications_; }

    const EtcMatrix& etc() const noexcept { return etc_; }
    const DependencyDag& dag() const noexcept { return dag_; }
    const std::vector<AppId>& app_of() const noexcept { return app_of_; }
    const std::vector<TaskId>& order() const noexcept { return order_; }

    std::span<const TaskId> parents_of(TaskId task) const noexcept {
        return {parent_list_.data() + parent_start_[task],
                parent_start_[task + 1] - parent_start_[task]};
    }
    bool is_descendant(TaskId of, TaskId task) const noexcept {
        const std::size_t bit = task;
        return (closure_[of * words_ + bit / 64] >> (bit % 64)) & 1U;
    }
    std::vector<TaskId> descendants_of(TaskId task) const;

    // Throws LengthMismatchError or GeneRangeError.
    void check(const Chromosome& genes) const;

private:
    EtcMatrix etc_;
    DependencyDag dag_;
    std::vector<AppId> app_of_;
    std::size_t applications_ = 0;
    std::vector<TaskId> order_;
    std::vector<std::size_t> parent_start_;
    std::vector<TaskId> parent_list_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> closure_;
};

}  // namespace mcsched
