#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcsched/benchmark.hpp"
#include "mcsched/ga.hpp"

namespace mcsched {

enum class Algorithm { ga, random, greedy, fixed };

std::string_view algorithm_name(Algorithm algo);
// Throws ConfigError.
Algorithm parse_algorithm(std::string_view name);

// An instance read from disk instead of generated.
struct FileSource {
    std::filesystem::path etc;
    std::filesystem::path dep;
    std::size_t tasks = 0;
    std::size_t clouds = 0;
    std::size_t applications = 1;
    std::string label = "file";
};

struct ExperimentConfig {
    // Generated instances: every (class, size, apps, seed) combination. The
    // run seed also seeds instance generation.
    std::vector<InstanceClass> classes;
    std::vector<DatasetSize> sizes;
    std::vector<std::size_t> applications;
    double edge_prob = 0.3;

    // Overrides the generated grid when set.
    bool demo = false;
    std::optional<FileSource> file;

    std::vector<std::uint64_t> seeds{1};
    std::vector<Algorithm> algorithms{Algorithm::ga};
    GaConfig ga;
    // 0 means the evaluation count of a GA run under `ga`.
    std::size_t random_budget = 0;
    // Schedule for Algorithm::fixed; all zeros when absent.
    std::optional<Chromosome> fixed_schedule;
    // Worker threads across (instance, seed) pairs.
    unsigned parallel_runs = 1;

    // Throws ConfigError.
    void validate() const;
};

struct RunRow {
    std::string cls;
    std::string dataset;
    std::size_t applications = 0;
    Algorithm algo = Algorithm::ga;
    std::uint64_t seed = 0;
    Duration best_fitness_sum = 0;
    Duration best_makespan_max = 0;
    std::size_t generations = 0;
    std::size_t evaluations = 0;
    double runtime_ms = 0;
    std::vector<Duration> trace;
};

// Evaluation count of one GA run: the initial population plus every
// non-elite offspring.
std::size_t ga_evaluation_budget(const GaConfig& config);

// Throws the data errors of instance loading before any run starts, and
// InvariantViolation when a GA trace with elitism increases.
std::vector<RunRow> run_experiment(const ExperimentConfig& config);

std::string_view csv_header();
void write_csv(std::ostream& out, const std::vector<RunRow>& rows);
std::string format_csv_row(const RunRow& row);

// One table per algorithm: mean best fitness per class (rows) and
// dataset/application count (columns).
void write_summary(std::ostream& out, const std::vector<RunRow>& rows);

}  // namespace mcsched
