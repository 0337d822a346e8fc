#include "mcsched/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "mcsched/baselines.hpp"
#include "mcsched/fitness.hpp"

namespace mcsched {

namespace {

std::string shortest(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

struct Job {
    // Index into the preloaded instances, or -1 for a generated instance.
    int preloaded = -1;
    InstanceSpec spec;
    std::string cls;
    std::string dataset;
    std::size_t applications = 0;
    std::uint64_t seed = 0;
};

void check_trace(const RunRow& row, const GaConfig& ga) {
    if (ga.elite_count == 0) return;
    for (std::size_t g = 1; g < row.trace.size(); ++g) {
        if (row.trace[g] > row.trace[g - 1]) {
            throw InvariantViolation("best fitness increased from " + shortest(row.trace[g - 1]) +
                                     " to " + shortest(row.trace[g]) + " at generation " +
                                     std::to_string(g) + " (" + row.cls + ", " + row.dataset +
                                     ", seed " + std::to_string(row.seed) + ")");
        }
    }
}

std::vector<RunRow> run_job(const Job& job, const WorkloadInstance& instance,
                            const ExperimentConfig& config) {
    std::vector<RunRow> rows;
    for (Algorithm algo : config.algorithms) {
        RunRow row;
        row.cls = job.cls;
        row.dataset = job.dataset;
        row.applications = job.applications;
        row.algo = algo;
        row.seed = job.seed;

        const auto start = std::chrono::steady_clock::now();
        Chromosome best;
        switch (algo) {
            case Algorithm::ga: {
                GaConfig ga = config.ga;
                ga.seed = job.seed;
                auto result = evolve(instance, ga);
                best = std::move(result.best_genes);
                row.generations = ga.generations;
                row.evaluations = result.evaluations;
                row.trace = std::move(result.trace);
                check_trace(row, ga);
                break;
            }
            case Algorithm::random: {
                const std::size_t budget =
                    config.random_budget ? config.random_budget : ga_evaluation_budget(config.ga);
                auto result = random_search(instance, budget, job.seed, config.ga.threads);
                best = std::move(result.best_genes);
                row.evaluations = result.evaluations;
                break;
            }
            case Algorithm::greedy:
                best = greedy_min_etc(instance);
                row.evaluations = 1;
                break;
            case Algorithm::fixed:
                best = config.fixed_schedule
                           ? *config.fixed_schedule
                           : Chromosome{std::vector<CloudId>(instance.tasks(), 0)};
                row.evaluations = 1;
                break;
        }
        const auto report = evaluate(instance, best);
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        row.best_fitness_sum = report.makespan_sum;
        row.best_makespan_max = report.makespan_max;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string_view algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::ga: return "ga";
        case Algorithm::random: return "random";
        case Algorithm::greedy: return "greedy";
        case Algorithm::fixed: return "fixed";
    }
    return "ga";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::ga, Algorithm::random, Algorithm::greedy, Algorithm::fixed}) {
        if (algorithm_name(a) == name) return a;
    }
    throw ConfigError("unknown algorithm '" + std::string(name) +
                      "' (expected ga, random, greedy or fixed)");
}

void ExperimentConfig::validate() const {
    if (seeds.empty()) throw ConfigError("at least one seed is required");
    if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
    if (!demo && !file && (classes.empty() || sizes.empty() || applications.empty())) {
        throw ConfigError("generated experiments need classes, sizes and application counts");
    }
    if (file && (file->tasks == 0 || file->clouds == 0)) {
        throw ConfigError("file instances need positive task and cloud counts");
    }
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw ConfigError("edge probability must lie in [0, 1]");
    }
    if (std::find(algorithms.begin(), algorithms.end(), Algorithm::ga) != algorithms.end()) {
        ga.validate();
    }
}

std::size_t ga_evaluation_budget(const GaConfig& config) {
    return config.population_size +
           config.generations * (config.population_size - config.elite_count);
}

std::vector<RunRow> run_experiment(const ExperimentConfig& config) {
    config.validate();

    std::vector<WorkloadInstance> preloaded;
    std::vector<Job> jobs;
    if (config.demo || config.file) {
        std::string label;
        std::string dataset;
        std::size_t apps = 0;
        if (config.demo) {
            preloaded.push_back(demo_instance());
            label = "demo";
        } else {
            const auto& f = *config.file;
            auto etc = parse_etc_file(f.etc, f.tasks, f.clouds);
            auto dag = parse_dep_file(f.dep, f.tasks);
            preloaded.emplace_back(std::move(etc), std::move(dag),
                                   partition_applications(f.tasks, f.applications));
            label = f.label;
        }
        const auto& inst = preloaded.front();
        dataset = DatasetSize{inst.tasks(), inst.clouds()}.name();
        apps = inst.applications();
        if (config.fixed_schedule) inst.check(*config.fixed_schedule);
        for (auto seed : config.seeds) jobs.push_back({0, {}, label, dataset, apps, seed});
    } else {
        for (const auto& cls : config.classes) {
            for (const auto& size : config.sizes) {
                for (auto apps : config.applications) {
                    for (auto seed : config.seeds) {
                        InstanceSpec spec;
                        spec.tasks = size.tasks;
                        spec.clouds = size.clouds;
                        spec.cls = cls;
                        spec.applications = apps;
                        spec.edge_prob = config.edge_prob;
                        spec.seed = seed;
                        spec.validate();
                        jobs.push_back({-1, spec, cls.name(), size.name(), apps, seed});
                    }
                }
            }
        }
    }

    std::vector<std::vector<RunRow>> results(jobs.size());
    auto work = [&](std::size_t j) {
        const Job& job = jobs[j];
        if (job.preloaded >= 0) {
            results[j] = run_job(job, preloaded[static_cast<std::size_t>(job.preloaded)], config);
        } else {
            const auto instance = generate_instance(job.spec);
            if (config.fixed_schedule) instance.check(*config.fixed_schedule);
            results[j] = run_job(job, instance, config);
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(config.parallel_runs, 1,
                                                        std::max<std::size_t>(jobs.size(), 1));
    if (workers == 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t j = w; j < jobs.size(); j += workers) work(j);
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

    std::vector<RunRow> rows;
    for (auto& r : results) {
        for (auto& row : r) rows.push_back(std::move(row));
    }
    return rows;
}

std::string_view csv_header() {
    return "class,dataset,apps,algo,seed,best_fitness_sum,best_makespan_max,generations,"
           "evaluations,runtime_ms";
}

std::string format_csv_row(const RunRow& row) {
    char runtime[32];
    std::snprintf(runtime, sizeof runtime, "%.3f", row.runtime_ms);
    std::ostringstream out;
    out << row.cls << ',' << row.dataset << ',' << row.applications << ','
        << algorithm_name(row.algo) << ',' << row.seed << ',' << shortest(row.best_fitness_sum)
        << ',' << shortest(row.best_makespan_max) << ',' << row.generations << ','
        << row.evaluations << ',' << runtime;
    return out.str();
}

void write_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << csv_header() << '\n';
    for (const auto& row : rows) out << format_csv_row(row) << '\n';
}

void write_summary(std::ostream& out, const std::vector<RunRow>& rows) {
    // Row order: reporting class order first, then anything else
    // in order of appearance.
    std::vector<std::string> class_order;
    for (const auto& cls : table_classes()) {
        const auto name = cls.name();
        if (std::any_of(rows.begin(), rows.end(), [&](const RunRow& r) { return r.cls == name; })) {
            class_order.push_back(name);
        }
    }
    std::vector<std::pair<std::string, std::size_t>> columns;
    std::vector<Algorithm> algos;
    for (const auto& r : rows) {
        if (std::find(class_order.begin(), class_order.end(), r.cls) == class_order.end()) {
            class_order.push_back(r.cls);
        }
        const std::pair col{r.dataset, r.applications};
        if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
        if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
    }

    for (Algorithm algo : algos) {
        std::map<std::tuple<std::string, std::string, std::size_t>, std::pair<double, std::size_t>>
            acc;
        for (const auto& r : rows) {
            if (r.algo != algo) continue;
            auto& [sum, count] = acc[{r.cls, r.dataset, r.applications}];
            sum += r.best_fitness_sum;
            ++count;
        }

        std::vector<std::string> headers;
        for (const auto& [dataset, apps] : columns) {
            auto label = dataset;
            std::replace(label.begin(), label.end(), 'x', '*');
            headers.push_back(label + "(" + std::to_string(apps) + " Appl.)");
        }
        constexpr int kFirst = 10;
        std::vector<int> widths;
        for (const auto& h : headers) widths.push_back(std::max<int>(18, static_cast<int>(h.size()) + 2));

        out << "Mean best makespan (sum of completion times, ms), algorithm: "
            << algorithm_name(algo) << '\n';
        out << std::left << std::setw(kFirst) << "Instance";
        for (std::size_t c = 0; c < headers.size(); ++c) {
            out << std::right << std::setw(widths[c]) << headers[c];
        }
        out << '\n';
        for (const auto& cls : class_order) {
            out << std::left << std::setw(kFirst) << cls;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                const auto it = acc.find({cls, columns[c].first, columns[c].second});
                std::ostringstream cell;
                if (it == acc.end()) {
                    cell << "-";
                } else {
                    cell << std::fixed << std::setprecision(2)
                         << it->second.first / static_cast<double>(it->second.second);
                }
                out << std::right << std::setw(widths[c]) << cell.str();
            }
            out << '\n';
        }
        out << '\n';
    }
}

}  // namespace mcsched
