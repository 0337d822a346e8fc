#include "mcsched/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <queue>
#include <string>

namespace mcsched {

CycleError::CycleError(std::vector<std::size_t> residue)
    : Error([&] {
          std::string msg = "dependency graph has a cycle among tasks";
          for (auto t : residue) msg += " " + std::to_string(t);
          return msg;
      }()),
      tasks_(std::move(residue)) {}

EtcMatrix::EtcMatrix(std::size_t tasks, std::size_t clouds, std::vector<Duration> cells)
    : tasks_(tasks), clouds_(clouds), cells_(std::move(cells)) {
    if (cells_.size() != tasks_ * clouds_) {
        throw DimensionError("ETC matrix has " + std::to_string(cells_.size()) +
                             " cells, expected " + std::to_string(tasks_) + "x" +
                             std::to_string(clouds_));
    }
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (!(cells_[i] > 0.0) || !std::isfinite(cells_[i])) {
            throw PositivityError(i / clouds_, i % clouds_, cells_[i]);
        }
    }
}

DependencyDag::DependencyDag(std::size_t tasks, std::vector<std::uint8_t> cells)
    : tasks_(tasks), dep_(std::move(cells)) {
    if (dep_.size() != tasks_ * tasks_) {
        throw DimensionError("dependency matrix has " + std::to_string(dep_.size()) +
                             " cells, expected " + std::to_string(tasks_) + "x" +
                             std::to_string(tasks_));
    }
    for (std::size_t i = 0; i < dep_.size(); ++i) {
        if (dep_[i] > 1) throw NonBinaryError(i / tasks_, i % tasks_);
    }
}

void DependencyDag::add_edge(TaskId parent, TaskId child) {
    dep_[static_cast<std::size_t>(child) * tasks_ + parent] = 1;
}

std::size_t DependencyDag::edge_count() const noexcept {
    return static_cast<std::size_t>(std::count(dep_.begin(), dep_.end(), std::uint8_t{1}));
}

namespace {

// Children lists (transposed adjacency), ascending.
std::vector<std::vector<TaskId>> children_lists(const DependencyDag& dag) {
    const std::size_t n = dag.tasks();
    std::vector<std::vector<TaskId>> children(n);
    for (TaskId i = 0; i < n; ++i) {
        for (TaskId j = 0; j < n; ++j) {
            if (dag.depends(i, j)) children[j].push_back(i);
        }
    }
    return children;
}

std::vector<TaskId> reachable(const std::vector<std::vector<TaskId>>& adj, TaskId start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<TaskId> stack{start};
    while (!stack.empty()) {
        const TaskId u = stack.back();
        stack.pop_back();
        for (TaskId v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    seen[start] = false;
    std::vector<TaskId> out;
    for (TaskId v = 0; v < adj.size(); ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

}  // namespace

std::vector<TaskId> topological_order(const DependencyDag& dag) {
    const std::size_t n = dag.tasks();
    for (TaskId i = 0; i < n; ++i) {
        if (dag.depends(i, i)) throw SelfLoopError(i);
    }
    const auto children = children_lists(dag);
    std::vector<std::size_t> indegree(n, 0);
    for (TaskId j = 0; j < n; ++j) {
        for (TaskId i : children[j]) ++indegree[i];
    }
    std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
    for (TaskId i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push(i);
    }
    std::vector<TaskId> order;
    order.reserve(n);
    while (!ready.empty()) {
        const TaskId u = ready.top();
        ready.pop();
        order.push_back(u);
        for (TaskId v : children[u]) {
            if (--indegree[v] == 0) ready.push(v);
        }
    }
    if (order.size() != n) {
        std::vector<std::size_t> residue;
        for (TaskId i = 0; i < n; ++i) {
            if (indegree[i] != 0) residue.push_back(i);
        }
        throw CycleError(std::move(residue));
    }
    return order;
}

void validate_dag(const DependencyDag& dag) { (void)topological_order(dag); }

std::vector<TaskId> descendants(const DependencyDag& dag, TaskId task) {
    return reachable(children_lists(dag), task);
}

std::vector<TaskId> ancestors(const DependencyDag& dag, TaskId task) {
    std::vector<std::vector<TaskId>> up(dag.tasks());
    for (TaskId i = 0; i < dag.tasks(); ++i) up[i] = parents(dag, i);
    return reachable(up, task);
}

std::vector<TaskId> parents(const DependencyDag& dag, TaskId task) {
    std::vector<TaskId> out;
    for (TaskId j = 0; j < dag.tasks(); ++j) {
        if (dag.depends(task, j)) out.push_back(j);
    }
    return out;
}

WorkloadInstance::WorkloadInstance(EtcMatrix etc, DependencyDag dag, std::vector<AppId> app_of)
    : etc_(std::move(etc)), dag_(std::move(dag)), app_of_(std::move(app_of)) {
    const std::size_t n = etc_.tasks();
    if (app_of_.empty()) app_of_.assign(n, 0);
    if (dag_.tasks() != n || app_of_.size() != n) {
        throw DimensionError("instance size mismatch: ETC has " + std::to_string(n) +
                             " tasks, DAG " + std::to_string(dag_.tasks()) +
                             ", application map " + std::to_string(app_of_.size()));
    }
    if (n > 0 && etc_.clouds() == 0) throw DimensionError("instance has no clouds");
    applications_ = app_of_.empty() ? 0 : *std::max_element(app_of_.begin(), app_of_.end()) + 1;

    order_ = topological_order(dag_);

    parent_start_.assign(n + 1, 0);
    for (TaskId i = 0; i < n; ++i) {
        for (TaskId j = 0; j < n; ++j) {
            if (!dag_.depends(i, j)) continue;
            if (app_of_[i] != app_of_[j]) throw CrossApplicationEdgeError(i, j);
            parent_list_.push_back(j);
        }
        parent_start_[i + 1] = parent_list_.size();
    }

    // Descendant bitsets, filled in reverse evaluation order so every child's
    // set is complete before it is merged into its parents.
    words_ = (n + 63) / 64;
    closure_.assign(n * words_, 0);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
        const TaskId child = *it;
        const std::uint64_t* child_row = closure_.data() + child * words_;
        for (TaskId parent : parents_of(child)) {
            std::uint64_t* row = closure_.data() + parent * words_;
            row[child / 64] |= std::uint64_t{1} << (child % 64);
            for (std::size_t w = 0; w < words_; ++w) row[w] |= child_row[w];
        }
    }
}

WorkloadInstance::WorkloadInstance(EtcMatrix etc, DependencyDag dag)
    : WorkloadInstance(std::move(etc), std::move(dag), std::vector<AppId>{}) {}

std::vector<TaskId> WorkloadInstance::descendants_of(TaskId task) const {
    std::vector<TaskId> out;
    const std::uint64_t* row = closure_.data() + static_cast<std::size_t>(task) * words_;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = row[w];
        while (bits != 0) {
            const int b = std::countr_zero(bits);
            out.push_back(static_cast<TaskId>(w * 64 + b));
            bits &= bits - 1;
        }
    }
    return out;
}

void WorkloadInstance::check(const Chromosome& genes) const {
    if (genes.size() != tasks()) {
        throw LengthMismatchError("chromosome has " + std::to_string(genes.size()) +
                                  " genes, instance has " + std::to_string(tasks()) + " tasks");
    }
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (genes[i] >= clouds()) throw GeneRangeError(i, genes[i], clouds());
    }
}

}  // namespace mcsched
