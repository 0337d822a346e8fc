#include "mcsched/benchmark.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace mcsched {

namespace {

constexpr std::string_view kConsistencyCodes = "cis";

// Separate stream for DAG generation so the ETC matrix of a seed does not
// depend on whether a DAG was drawn first.
constexpr std::uint64_t kDagStreamSalt = 0x9E3779B97F4A7C15ULL;

std::string_view het_code(Heterogeneity h) { return h == Heterogeneity::hi ? "hi" : "lo"; }

Heterogeneity parse_het(std::string_view code, std::string_view whole) {
    if (code == "hi") return Heterogeneity::hi;
    if (code == "lo") return Heterogeneity::lo;
    throw ConfigError("unknown heterogeneity code in instance class '" + std::string(whole) + "'");
}

std::string_view consistency_word(Consistency c) {
    switch (c) {
        case Consistency::consistent: return "consistent";
        case Consistency::inconsistent: return "inconsistent";
        case Consistency::semiconsistent: return "semiconsistent";
    }
    return "consistent";
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Whitespace-separated tokens with their 1-based line numbers, skipping
// '#' comment lines.
struct Token {
    std::string text;
    std::size_t line;
};

std::vector<Token> read_tokens(std::istream& in, std::size_t limit) {
    std::vector<Token> tokens;
    std::string line;
    std::size_t line_no = 0;
    while (tokens.size() < limit && std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream words(line);
        std::string word;
        while (tokens.size() < limit && words >> word) tokens.push_back({word, line_no});
    }
    return tokens;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

InstanceClass InstanceClass::parse(std::string_view name) {
    // u_x_vvww
    if (name.size() != 8 || name.substr(0, 2) != "u_" || name[3] != '_') {
        throw ConfigError("instance class '" + std::string(name) + "' is not of the form u_x_vvww");
    }
    InstanceClass cls;
    switch (name[2]) {
        case 'c': cls.consistency = Consistency::consistent; break;
        case 'i': cls.consistency = Consistency::inconsistent; break;
        case 's': cls.consistency = Consistency::semiconsistent; break;
        default:
            throw ConfigError("unknown consistency code '" + std::string(1, name[2]) +
                              "' in instance class '" + std::string(name) + "'");
    }
    cls.task_het = parse_het(name.substr(4, 2), name);
    cls.machine_het = parse_het(name.substr(6, 2), name);
    return cls;
}

std::string InstanceClass::name() const {
    std::string out = "u_";
    out += kConsistencyCodes[static_cast<std::size_t>(consistency)];
    out += '_';
    out += het_code(task_het);
    out += het_code(machine_het);
    return out;
}

const std::vector<InstanceClass>& table_classes() {
    static const std::vector<InstanceClass> classes = [] {
        std::vector<InstanceClass> out;
        for (const char* name : {"u_c_hihi", "u_c_hilo", "u_c_lolo", "u_c_lohi", "u_i_hihi",
                                 "u_i_lohi", "u_i_hilo", "u_i_lolo", "u_s_hihi", "u_s_hilo",
                                 "u_s_lolo", "u_s_lohi"}) {
            out.push_back(InstanceClass::parse(name));
        }
        return out;
    }();
    return classes;
}

void InstanceSpec::validate() const {
    if (clouds < 1) throw ConfigError("instance needs at least one cloud");
    if (applications < 1) throw ConfigError("instance needs at least one application");
    if (tasks < applications) throw ConfigError("fewer tasks than applications");
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw ConfigError("edge probability must lie in [0, 1]");
    }
    for (double r : {task_range_hi, task_range_lo, machine_range_hi, machine_range_lo}) {
        if (!(r >= 1.0) || !std::isfinite(r)) {
            throw ConfigError("heterogeneity ranges must be finite and at least 1");
        }
    }
}

DatasetSize DatasetSize::parse(std::string_view text) {
    const auto x = text.find('x');
    DatasetSize size{};
    if (x == std::string_view::npos || !parse_number(text.substr(0, x), size.tasks) ||
        !parse_number(text.substr(x + 1), size.clouds) || size.tasks == 0 || size.clouds == 0) {
        throw ConfigError("dataset size '" + std::string(text) + "' is not of the form <n>x<q>");
    }
    return size;
}

std::string DatasetSize::name() const {
    return std::to_string(tasks) + "x" + std::to_string(clouds);
}

std::uint64_t size_dep_mat(std::span<const std::uint64_t> task_counts) {
    std::uint64_t total = 0;
    for (auto c : task_counts) total += c;
    return total * total;
}

EtcMatrix generate_etc(const InstanceSpec& spec) {
    spec.validate();
    const std::size_t n = spec.tasks;
    const std::size_t q = spec.clouds;
    const double task_range =
        spec.cls.task_het == Heterogeneity::hi ? spec.task_range_hi : spec.task_range_lo;
    const double machine_range =
        spec.cls.machine_het == Heterogeneity::hi ? spec.machine_range_hi : spec.machine_range_lo;

    Rng rng(spec.seed);
    std::uniform_real_distribution<double> baseline(1.0, task_range);
    std::uniform_real_distribution<double> multiplier(1.0, machine_range);

    std::vector<Duration> cells(n * q);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = baseline(rng);
        auto row = std::span(cells).subspan(i * q, q);
        for (auto& cell : row) cell = b * multiplier(rng);

        switch (spec.cls.consistency) {
            case Consistency::consistent: std::sort(row.begin(), row.end()); break;
            case Consistency::semiconsistent: {
                std::vector<double> even;
                for (std::size_t j = 0; j < q; j += 2) even.push_back(row[j]);
                std::sort(even.begin(), even.end());
                for (std::size_t j = 0; j < q; j += 2) row[j] = even[j / 2];
                break;
            }
            case Consistency::inconsistent: break;
        }
    }
    return EtcMatrix(n, q, std::move(cells));
}

std::vector<AppId> partition_applications(std::size_t tasks, std::size_t applications) {
    std::vector<AppId> app_of(tasks);
    for (std::size_t a = 0; a < applications; ++a) {
        const std::size_t begin = tasks * a / applications;
        const std::size_t end = tasks * (a + 1) / applications;
        std::fill(app_of.begin() + static_cast<std::ptrdiff_t>(begin),
                  app_of.begin() + static_cast<std::ptrdiff_t>(end), static_cast<AppId>(a));
    }
    return app_of;
}

GeneratedDag generate_dag(const InstanceSpec& spec) {
    spec.validate();
    GeneratedDag out{DependencyDag(spec.tasks),
                     partition_applications(spec.tasks, spec.applications)};
    Rng rng(spec.seed ^ kDagStreamSalt);
    std::bernoulli_distribution edge(spec.edge_prob);
    for (std::size_t a = 0; a < spec.applications; ++a) {
        const std::size_t begin = spec.tasks * a / spec.applications;
        const std::size_t end = spec.tasks * (a + 1) / spec.applications;
        for (std::size_t child = begin; child < end; ++child) {
            for (std::size_t parent = begin; parent < child; ++parent) {
                if (edge(rng)) out.dag.add_edge(static_cast<TaskId>(parent), static_cast<TaskId>(child));
            }
        }
    }
    return out;
}

WorkloadInstance generate_instance(const InstanceSpec& spec) {
    auto [dag, app_of] = generate_dag(spec);
    return WorkloadInstance(generate_etc(spec), std::move(dag), std::move(app_of));
}

std::string instance_stem(const InstanceSpec& spec) {
    return spec.cls.name() + "_" + DatasetSize{spec.tasks, spec.clouds}.name() + "_p" +
           std::to_string(spec.applications) + "_s" + std::to_string(spec.seed);
}

EtcMatrix parse_etc(std::istream& in, std::size_t tasks, std::size_t clouds) {
    const std::size_t expected = tasks * clouds;
    const auto tokens = read_tokens(in, expected);
    if (tokens.size() < expected) throw TokenCountError(expected, tokens.size());
    std::vector<Duration> cells(expected);
    for (std::size_t t = 0; t < expected; ++t) {
        if (!parse_number(tokens[t].text, cells[t])) {
            throw NonNumericError(tokens[t].line, tokens[t].text);
        }
    }
    return EtcMatrix(tasks, clouds, std::move(cells));
}

EtcMatrix parse_etc_file(const std::filesystem::path& path, std::size_t tasks, std::size_t clouds) {
    auto in = open_input(path);
    return parse_etc(in, tasks, clouds);
}

void write_etc(std::ostream& out, const EtcMatrix& etc, std::string_view comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    for (Duration cell : etc.cells()) out << format_double(cell) << '\n';
}

void write_etc_file(const std::filesystem::path& path, const EtcMatrix& etc,
                    std::string_view comment) {
    auto out = open_output(path);
    write_etc(out, etc, comment);
    finish(out, path);
}

DependencyDag parse_dep(std::istream& in, std::size_t tasks) {
    const std::size_t expected = tasks * tasks;
    const auto tokens = read_tokens(in, expected);
    if (tokens.size() < expected) throw TokenCountError(expected, tokens.size());
    std::vector<std::uint8_t> cells(expected);
    for (std::size_t t = 0; t < expected; ++t) {
        long long v = 0;
        if (!parse_number(tokens[t].text, v)) throw NonNumericError(tokens[t].line, tokens[t].text);
        if (v != 0 && v != 1) throw NonBinaryError(t / tasks, t % tasks);
        cells[t] = static_cast<std::uint8_t>(v);
    }
    return DependencyDag(tasks, std::move(cells));
}

DependencyDag parse_dep_file(const std::filesystem::path& path, std::size_t tasks) {
    auto in = open_input(path);
    return parse_dep(in, tasks);
}

void write_dep(std::ostream& out, const DependencyDag& dag) {
    const std::size_t n = dag.tasks();
    std::string line;
    for (TaskId i = 0; i < n; ++i) {
        line.clear();
        for (TaskId j = 0; j < n; ++j) {
            if (j > 0) line += ' ';
            line += dag.depends(i, j) ? '1' : '0';
        }
        out << line << '\n';
    }
}

void write_dep_file(const std::filesystem::path& path, const DependencyDag& dag) {
    auto out = open_output(path);
    write_dep(out, dag);
    finish(out, path);
}

void write_manifest_file(const std::filesystem::path& path, const InstanceSpec& spec) {
    auto out = open_output(path);
    out << "class=" << spec.cls.name() << '\n'
        << "n=" << spec.tasks << '\n'
        << "q=" << spec.clouds << '\n'
        << "consistency=" << consistency_word(spec.cls.consistency) << '\n'
        << "task_het=" << het_code(spec.cls.task_het) << '\n'
        << "machine_het=" << het_code(spec.cls.machine_het) << '\n'
        << "p=" << spec.applications << '\n'
        << "edge_prob=" << format_double(spec.edge_prob) << '\n'
        << "seed=" << spec.seed << '\n'
        << "task_range_hi=" << format_double(spec.task_range_hi) << '\n'
        << "task_range_lo=" << format_double(spec.task_range_lo) << '\n'
        << "machine_range_hi=" << format_double(spec.machine_range_hi) << '\n'
        << "machine_range_lo=" << format_double(spec.machine_range_lo) << '\n';
    finish(out, path);
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

InstanceSpec read_manifest_file(const std::filesystem::path& path) {
    const auto kv = read_key_values(path);
    auto get = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw FormatError(path.string() + ": missing key '" + key + "'");
        return it->second;
    };
    auto number = [&](const std::string& key, auto& value) {
        if (!parse_number(get(key), value)) {
            throw FormatError(path.string() + ": key '" + key + "' is not a number");
        }
    };
    InstanceSpec spec;
    try {
        number("n", spec.tasks);
        number("q", spec.clouds);
        number("p", spec.applications);
        number("edge_prob", spec.edge_prob);
        number("seed", spec.seed);
        if (kv.count("class")) {
            spec.cls = InstanceClass::parse(get("class"));
        } else {
            const auto& word = get("consistency");
            spec.cls = InstanceClass::parse("u_" + word.substr(0, 1) + "_" + get("task_het") +
                                            get("machine_het"));
        }
        for (auto [key, field] : {std::pair{"task_range_hi", &spec.task_range_hi},
                                  std::pair{"task_range_lo", &spec.task_range_lo},
                                  std::pair{"machine_range_hi", &spec.machine_range_hi},
                                  std::pair{"machine_range_lo", &spec.machine_range_lo}}) {
            if (kv.count(key)) number(key, *field);
        }
        spec.validate();
    } catch (const ConfigError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return spec;
}

Chromosome parse_schedule(std::istream& in, std::size_t tasks, std::size_t clouds) {
    const auto tokens = read_tokens(in, tasks);
    if (tokens.size() < tasks || tasks == 0) throw TokenCountError(tasks, tokens.size());
    Chromosome genes;
    genes.genes.resize(tasks);
    for (std::size_t t = 0; t < tasks; ++t) {
        long long v = 0;
        if (!parse_number(tokens[t].text, v)) throw NonNumericError(tokens[t].line, tokens[t].text);
        if (v < 0 || static_cast<unsigned long long>(v) >= clouds) throw GeneRangeError(t, v, clouds);
        genes[t] = static_cast<CloudId>(v);
    }
    return genes;
}

Chromosome parse_schedule_file(const std::filesystem::path& path, std::size_t tasks,
                               std::size_t clouds) {
    auto in = open_input(path);
    return parse_schedule(in, tasks, clouds);
}

WorkloadInstance demo_instance(DemoVariant variant) {
    // Execution times, one row per task A..N, one column per cloud.
    static constexpr std::array<std::array<double, 4>, 14> kEtc{{
        {6, 10, 3, 2},  // A
        {7, 9, 4, 3},   // B
        {8, 8, 5, 4},   // C
        {10, 7, 3, 5},  // D
        {4, 8, 4, 6},   // E
        {5, 5, 5, 7},   // F
        {6, 4, 10, 8},  // G
        {7, 6, 8, 9},   // H
        {3, 3, 9, 9},   // I
        {7, 4, 9, 8},   // J
        {9, 4, 8, 7},   // K
        {4, 6, 7, 10},  // L
        {5, 6, 6, 3},   // M
        {5, 8, 5, 4},   // N
    }};
    enum : TaskId { A, B, C, D, E, F, G, H, I, J, K, L, M, N };

    const std::size_t n = variant == DemoVariant::nine_task ? 9 : 14;
    std::vector<Duration> cells;
    for (std::size_t t = 0; t < n; ++t) cells.insert(cells.end(), kEtc[t].begin(), kEtc[t].end());

    DependencyDag dag(n);
    for (TaskId p : {A, B, C, D}) dag.add_edge(p, E);
    dag.add_edge(F, G);
    dag.add_edge(F, H);
    dag.add_edge(G, I);
    dag.add_edge(H, I);
    std::vector<AppId> app_of{0, 0, 0, 0, 0, 1, 1, 1, 1};
    if (variant == DemoVariant::fourteen_task) {
        dag.add_edge(J, K);
        dag.add_edge(K, L);
        dag.add_edge(L, M);
        dag.add_edge(L, N);
        dag.add_edge(M, N);
        app_of.insert(app_of.end(), {2, 2, 2, 2, 2});
    }
    return WorkloadInstance(EtcMatrix(n, 4, std::move(cells)), std::move(dag), std::move(app_of));
}

std::string demo_task_name(TaskId task) {
    return task < 26 ? std::string(1, static_cast<char>('A' + task)) : "T" + std::to_string(task);
}

}  // namespace mcsched
