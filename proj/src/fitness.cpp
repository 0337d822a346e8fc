#include "mcsched/fitness.hpp"

#include <algorithm>
#include <optional>
#include <exception>
#include <thread>

namespace mcsched {

namespace {

Duration completion_memo(const WorkloadInstance& instance, const Chromosome& genes, TaskId task,
                         std::vector<std::optional<Duration>>& memo);

Duration waiting_memo(const WorkloadInstance& instance, const Chromosome& genes, TaskId task,
                      std::vector<std::optional<Duration>>& memo) {
    Duration wait = 0;
    for (TaskId parent : instance.parents_of(task)) {
        wait = std::max(wait, completion_memo(instance, genes, parent, memo));
    }
    return wait;
}

Duration completion_memo(const WorkloadInstance& instance, const Chromosome& genes, TaskId task,
                         std::vector<std::optional<Duration>>& memo) {
    if (!memo[task]) {
        memo[task] = waiting_memo(instance, genes, task, memo) + instance.etc()(task, genes[task]);
    }
    return *memo[task];
}

}  // namespace

Duration waiting_time(const WorkloadInstance& instance, const Chromosome& genes, TaskId task) {
    instance.check(genes);
    std::vector<std::optional<Duration>> memo(instance.tasks());
    return waiting_memo(instance, genes, task, memo);
}

Duration completion_time(const WorkloadInstance& instance, const Chromosome& genes, TaskId task) {
    return waiting_time(instance, genes, task) + instance.etc()(task, genes[task]);
}

FitnessReport evaluate(const WorkloadInstance& instance, const Chromosome& genes) {
    instance.check(genes);
    const auto& etc = instance.etc();
    FitnessReport report;
    report.waiting.assign(instance.tasks(), 0);
    report.completion.assign(instance.tasks(), 0);
    report.cloud_load.assign(instance.clouds(), 0);
    for (TaskId task : instance.order()) {
        Duration wait = 0;
        for (TaskId parent : instance.parents_of(task)) {
            wait = std::max(wait, report.completion[parent]);
        }
        const Duration exec = etc(task, genes[task]);
        report.waiting[task] = wait;
        report.completion[task] = wait + exec;
    }
    // Summed in task-index order so the result does not depend on the
    // evaluation order.
    for (TaskId task = 0; task < instance.tasks(); ++task) {
        const Duration c = report.completion[task];
        report.makespan_sum += c;
        report.makespan_max = std::max(report.makespan_max, c);
        report.cloud_load[genes[task]] += etc(task, genes[task]);
    }
    return report;
}

Duration fitness(const WorkloadInstance& instance, const Chromosome& genes) {
    instance.check(genes);
    const auto& etc = instance.etc();
    std::vector<Duration> completion(instance.tasks(), 0);
    for (TaskId task : instance.order()) {
        Duration wait = 0;
        for (TaskId parent : instance.parents_of(task)) wait = std::max(wait, completion[parent]);
        completion[task] = wait + etc(task, genes[task]);
    }
    Duration sum = 0;
    for (Duration c : completion) sum += c;
    return sum;
}

void fitness_batch(const WorkloadInstance& instance, std::span<const Chromosome> population,
                   std::span<Duration> out, unsigned threads) {
    if (out.size() != population.size()) {
        throw LengthMismatchError("fitness output span does not match population size");
    }
    const std::size_t count = population.size();
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fitness(instance, population[i]);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) out[i] = fitness(instance, population[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<Duration> cloud_loads(const WorkloadInstance& instance, const Chromosome& genes) {
    std::vector<Duration> loads(instance.clouds(), 0);
    for (TaskId task = 0; task < genes.size(); ++task) {
        loads[genes[task]] += instance.etc()(task, genes[task]);
    }
    return loads;
}

CloudId busiest_cloud(std::span<const Duration> loads) {
    // max_element returns the first maximum.
    return static_cast<CloudId>(std::max_element(loads.begin(), loads.end()) - loads.begin());
}

CloudId least_utilized_cloud(std::span<const Duration> loads) {
    return static_cast<CloudId>(std::min_element(loads.begin(), loads.end()) - loads.begin());
}

}  // namespace mcsched
