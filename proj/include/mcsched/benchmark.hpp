#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcsched/model.hpp"

namespace mcsched {

enum class Consistency { consistent, inconsistent, semiconsistent };
enum class Heterogeneity { hi, lo };

// One of the twelve u_x_vvww instance classes.
struct InstanceClass {
    Consistency consistency = Consistency::consistent;
    Heterogeneity task_het = Heterogeneity::hi;
    Heterogeneity machine_het = Heterogeneity::hi;

    // "u_c_hihi" etc. Throws ConfigError on anything else.
    static InstanceClass parse(std::string_view name);
    std::string name() const;

    friend bool operator==(const InstanceClass&, const InstanceClass&) = default;
};

// The twelve classes in reporting row order.
const std::vector<InstanceClass>& table_classes();

struct InstanceSpec {
    std::size_t tasks = 512;
    std::size_t clouds = 16;
    InstanceClass cls;
    std::size_t applications = 20;
    double edge_prob = 0.3;
    std::uint64_t seed = 1;

    // Range bounds of the two-phase uniform generator.
    double task_range_hi = 3000;
    double task_range_lo = 100;
    double machine_range_hi = 1000;
    double machine_range_lo = 10;

    // Throws ConfigError.
    void validate() const;
};

struct DatasetSize {
    std::size_t tasks;
    std::size_t clouds;

    // "512x16". Throws ConfigError.
    static DatasetSize parse(std::string_view text);
    std::string name() const;
};

// (sum of counts)^2: the number of cells in the joint dependency matrix.
std::uint64_t size_dep_mat(std::span<const std::uint64_t> task_counts);

EtcMatrix generate_etc(const InstanceSpec& spec);

struct GeneratedDag {
    DependencyDag dag;
    std::vector<AppId> app_of;
};

// Contiguous application blocks of size floor(n/p) or ceil(n/p). Within a
// block each later task depends on each earlier one with probability
// edge_prob; there are no edges between blocks.
GeneratedDag generate_dag(const InstanceSpec& spec);

// Contiguous block partition used by generate_dag.
std::vector<AppId> partition_applications(std::size_t tasks, std::size_t applications);

WorkloadInstance generate_instance(const InstanceSpec& spec);

// File name stem u_<x>_<vv><ww>_<n>x<q>_p<p>_s<seed>.
std::string instance_stem(const InstanceSpec& spec);

// ETC files: optional '#' comment lines, then n*q positive decimals,
// whitespace separated, task-major. Extra values are ignored.
EtcMatrix parse_etc(std::istream& in, std::size_t tasks, std::size_t clouds);
EtcMatrix parse_etc_file(const std::filesystem::path& path, std::size_t tasks, std::size_t clouds);
void write_etc(std::ostream& out, const EtcMatrix& etc, std::string_view comment = {});
void write_etc_file(const std::filesystem::path& path, const EtcMatrix& etc,
                    std::string_view comment = {});

// Dependency files: n lines of n space-separated 0/1, row = child.
DependencyDag parse_dep(std::istream& in, std::size_t tasks);
DependencyDag parse_dep_file(const std::filesystem::path& path, std::size_t tasks);
void write_dep(std::ostream& out, const DependencyDag& dag);
void write_dep_file(const std::filesystem::path& path, const DependencyDag& dag);

// key=value provenance file written beside generated instances.
void write_manifest_file(const std::filesystem::path& path, const InstanceSpec& spec);
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);
InstanceSpec read_manifest_file(const std::filesystem::path& path);

// Schedule files: n whitespace-separated cloud indices. Throws
// TokenCountError, NonNumericError or GeneRangeError.
Chromosome parse_schedule(std::istream& in, std::size_t tasks, std::size_t clouds);
Chromosome parse_schedule_file(const std::filesystem::path& path, std::size_t tasks,
                               std::size_t clouds);

enum class DemoVariant {
    // Tasks A-I, unambiguous edges only.
    nine_task,
    // All fourteen tasks with M <- L and N <- {L, M}; the M/M diagonal entry
    // of the source table is dropped.
    fourteen_task,
};

WorkloadInstance demo_instance(DemoVariant variant = DemoVariant::nine_task);

// Single-letter label ("A".."N") for demo tasks.
std::string demo_task_name(TaskId task);

}  // namespace mcsched
