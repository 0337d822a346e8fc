#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mcsched/baselines.hpp"
#include "mcsched/benchmark.hpp"
#include "mcsched/experiment.hpp"
#include "mcsched/fitness.hpp"
#include "mcsched/ga.hpp"

namespace mcsched::cli {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> values;
    for (const auto& item : split_list(text)) {
        T v{};
        std::istringstream in(item);
        if (!(in >> v) || !in.eof()) {
            throw ConfigError(std::string("invalid ") + what + " '" + item + "'");
        }
        values.push_back(v);
    }
    return values;
}

// Splices the key=value pairs of a --config file in front of the explicit
// flags, so anything given on the command line wins.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    fs::path config;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
        } else {
            out.push_back(args[i]);
        }
    }
    if (config.empty() || out.empty()) return out;

    std::map<std::string, std::string> kv;
    try {
        kv = read_key_values(config);
    } catch (const Error& e) {
        throw ConfigError(std::string("config file: ") + e.what());
    }
    std::vector<std::string> injected;
    for (const auto& [name, value] : kv) {
        std::string key = name;
        std::replace(key.begin(), key.end(), '_', '-');
        injected.push_back("--" + key + "=" + value);
    }
    out.insert(out.begin() + 1, injected.begin(), injected.end());
    return out;
}

struct GaFlags {
    std::size_t population = 50;
    std::size_t generations = 200;
    double crossover = 0.8;
    double mutation = 0.2;
    std::size_t elite = 2;
    unsigned threads = 1;

    void attach(CLI::App& app) {
        app.add_option("--population", population, "GA population size")->capture_default_str();
        app.add_option("--generations", generations, "GA generations")->capture_default_str();
        app.add_option("--crossover", crossover, "crossover probability")->capture_default_str();
        app.add_option("--mutation", mutation, "mutation probability")->capture_default_str();
        app.add_option("--elite", elite, "elite chromosomes per generation")->capture_default_str();
        app.add_option("--threads", threads, "fitness evaluation threads")->capture_default_str();
    }

    GaConfig config(std::uint64_t seed) const {
        GaConfig c;
        c.population_size = population;
        c.generations = generations;
        c.crossover_prob = crossover;
        c.mutation_prob = mutation;
        c.elite_count = elite;
        c.seed = seed;
        c.threads = threads;
        return c;
    }
};

// Instance named on the command line: the demo, or ETC/dependency files
// sized by a manifest or explicit counts.
struct InstanceFlags {
    bool demo = false;
    int variant = 9;
    std::string etc;
    std::string dep;
    std::string manifest;
    std::size_t tasks = 0;
    std::size_t clouds = 0;
    std::size_t apps = 1;

    void attach(CLI::App& app) {
        app.add_flag("--demo", demo, "use the built-in 9-task demo instance");
        app.add_option("--etc", etc, "ETC matrix file");
        app.add_option("--dep", dep, "dependency matrix file");
        app.add_option("--manifest", manifest, "manifest giving n, q and p for --etc/--dep");
        app.add_option("--n", tasks, "task count for --etc/--dep");
        app.add_option("--q", clouds, "cloud count for --etc/--dep");
        app.add_option("--p", apps, "application count for --etc/--dep");
    }

    bool given() const { return demo || !etc.empty() || !dep.empty(); }

    FileSource file_source() {
        if (etc.empty() || dep.empty()) throw ConfigError("--etc and --dep must be given together");
        FileSource src;
        src.etc = etc;
        src.dep = dep;
        if (!manifest.empty()) {
            const auto spec = read_manifest_file(manifest);
            src.tasks = spec.tasks;
            src.clouds = spec.clouds;
            src.applications = spec.applications;
            src.label = spec.cls.name();
        } else {
            if (tasks == 0 || clouds == 0) {
                throw ConfigError("--etc/--dep need --manifest or both --n and --q");
            }
            src.tasks = tasks;
            src.clouds = clouds;
            src.applications = apps;
        }
        return src;
    }

    WorkloadInstance load() {
        if (demo) {
            return demo_instance(variant == 14 ? DemoVariant::fourteen_task : DemoVariant::nine_task);
        }
        const auto src = file_source();
        return WorkloadInstance(parse_etc_file(src.etc, src.tasks, src.clouds),
                                parse_dep_file(src.dep, src.tasks),
                                partition_applications(src.tasks, src.applications));
    }
};

void print_report(std::ostream& out, const WorkloadInstance& instance, const Chromosome& genes,
                  bool letters) {
    const auto report = evaluate(instance, genes);
    out << std::setprecision(12) << std::left << std::setw(8) << "task" << std::right << std::setw(8) << "cloud"
        << std::setw(16) << "waiting" << std::setw(16) << "completion" << '\n';
    for (TaskId t = 0; t < instance.tasks(); ++t) {
        out << std::left << std::setw(8) << (letters ? demo_task_name(t) : std::to_string(t))
            << std::right << std::setw(8) << genes[t] << std::setw(16) << report.waiting[t]
            << std::setw(16) << report.completion[t] << '\n';
    }
    out << "makespan_sum " << report.makespan_sum << '\n';
    out << "makespan_max " << report.makespan_max << '\n';
    out << "cloud_load";
    for (Duration load : report.cloud_load) out << ' ' << load;
    out << '\n';
}

int cmd_generate(const std::string& cls_name, const std::string& size_text, std::size_t apps,
                 std::uint64_t seed, double edge_prob, const std::string& out_dir,
                 const std::vector<double>& ranges, std::ostream& out) {
    InstanceSpec spec;
    spec.cls = InstanceClass::parse(cls_name);
    const auto size = DatasetSize::parse(size_text);
    spec.tasks = size.tasks;
    spec.clouds = size.clouds;
    spec.applications = apps;
    spec.seed = seed;
    spec.edge_prob = edge_prob;
    spec.task_range_hi = ranges[0];
    spec.task_range_lo = ranges[1];
    spec.machine_range_hi = ranges[2];
    spec.machine_range_lo = ranges[3];
    spec.validate();

    const auto instance = generate_instance(spec);
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    const auto stem = instance_stem(spec);
    const auto etc_path = dir / (stem + ".etc");
    const auto dep_path = dir / (stem + ".dep");
    const auto manifest_path = dir / (stem + ".manifest");
    write_etc_file(etc_path, instance.etc(), stem + " " + size.name() + " task-major");
    write_dep_file(dep_path, instance.dag());
    write_manifest_file(manifest_path, spec);
    out << etc_path.string() << '\n' << dep_path.string() << '\n' << manifest_path.string() << '\n';
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Genetic-algorithm scheduling of dependent tasks on heterogeneous clouds",
                 "mcsched"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_help_all_flag("--help-all", "expand help for all subcommands");

    // generate
    auto* gen = app.add_subcommand("generate", "write a benchmark instance (ETC, DAG, manifest)");
    std::string gen_class;
    std::string gen_size = "512x16";
    std::size_t gen_apps = 20;
    std::uint64_t gen_seed = 1;
    double gen_edge_prob = 0.3;
    std::string gen_dir = ".";
    std::vector<double> ranges{3000, 100, 1000, 10};
    gen->add_option("--class", gen_class, "instance class u_x_vvww")->required();
    gen->add_option("--size", gen_size, "<tasks>x<clouds>")->capture_default_str();
    gen->add_option("--apps", gen_apps, "application count")->capture_default_str();
    gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen->add_option("--edge-prob", gen_edge_prob, "intra-application edge probability")
        ->capture_default_str();
    gen->add_option("--out-dir", gen_dir, "output directory")->capture_default_str();
    gen->add_option("--task-range-hi", ranges[0])->capture_default_str();
    gen->add_option("--task-range-lo", ranges[1])->capture_default_str();
    gen->add_option("--machine-range-hi", ranges[2])->capture_default_str();
    gen->add_option("--machine-range-lo", ranges[3])->capture_default_str();

    // run
    auto* runc = app.add_subcommand("run", "run GA and baseline experiments, emit CSV and summary");
    std::string run_preset;
    std::string run_classes = "all";
    std::string run_sizes = "512x16";
    std::string run_apps = "20";
    std::string run_seeds = "1";
    std::string run_algos = "ga";
    double run_edge_prob = 0.3;
    std::size_t run_budget = 0;
    std::string run_schedule;
    std::string run_csv;
    unsigned run_parallel = 1;
    bool run_no_summary = false;
    GaFlags run_ga;
    InstanceFlags run_inst;
    runc->add_option("--preset", run_preset, "demo | full (12 classes, 512x16 and 1024x32, 20 and 30 apps)")
        ->check(CLI::IsMember({"demo", "full"}));
    runc->add_option("--classes", run_classes, "comma list of classes, or 'all'")
        ->capture_default_str();
    runc->add_option("--sizes", run_sizes, "comma list of <tasks>x<clouds>")->capture_default_str();
    runc->add_option("--apps", run_apps, "comma list of application counts")->capture_default_str();
    runc->add_option("--seeds", run_seeds, "comma list of seeds")->capture_default_str();
    runc->add_option("--algo", run_algos, "comma list of ga, random, greedy, fixed")
        ->capture_default_str();
    runc->add_option("--edge-prob", run_edge_prob, "edge probability for generated DAGs")
        ->capture_default_str();
    runc->add_option("--budget", run_budget, "random-search evaluations (0: match the GA)")
        ->capture_default_str();
    runc->add_option("--schedule", run_schedule, "schedule file for --algo fixed");
    runc->add_option("--csv", run_csv, "CSV output path (default: standard output)");
    runc->add_option("--parallel-runs", run_parallel, "worker threads across runs")
        ->capture_default_str();
    runc->add_flag("--no-summary", run_no_summary, "skip the summary table");
    run_ga.attach(*runc);
    run_inst.attach(*runc);

    // eval
    auto* evalc = app.add_subcommand("eval", "evaluate a schedule file against an instance");
    std::string eval_schedule;
    InstanceFlags eval_inst;
    eval_inst.attach(*evalc);
    evalc->add_option("--variant", eval_inst.variant, "demo variant: 9 or 14 tasks")
        ->check(CLI::IsMember({9, 14}));
    evalc->add_option("--schedule", eval_schedule, "n whitespace-separated cloud indices")
        ->required();

    // demo
    auto* democ = app.add_subcommand("demo", "walk through the built-in demo instance");
    int demo_variant = 9;
    std::uint64_t demo_seed = 1;
    GaFlags demo_ga;
    demo_ga.generations = 100;
    demo_ga.population = 30;
    democ->add_option("--variant", demo_variant, "9 or 14 tasks")
        ->check(CLI::IsMember({9, 14}))
        ->capture_default_str();
    democ->add_option("--seed", demo_seed, "GA seed")->capture_default_str();
    demo_ga.attach(*democ);

    for (auto* sub : {gen, runc, evalc, democ}) {
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }

    try {
        auto args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    auto usage = [&](const std::string& message) {
        err << "usage error: " << message << '\n';
        return kUsageError;
    };

    try {
        if (gen->parsed()) {
            return cmd_generate(gen_class, gen_size, gen_apps, gen_seed, gen_edge_prob, gen_dir,
                                ranges, out);
        }

        if (evalc->parsed()) {
            if (!eval_inst.given()) return usage("eval needs --demo or --etc/--dep");
            WorkloadInstance instance;
            try {
                instance = eval_inst.load();
            } catch (const ConfigError& e) {
                return usage(e.what());
            }
            const auto genes =
                parse_schedule_file(eval_schedule, instance.tasks(), instance.clouds());
            print_report(out, instance, genes, eval_inst.demo);
            return kOk;
        }

        if (democ->parsed()) {
            const auto instance = demo_instance(demo_variant == 14 ? DemoVariant::fourteen_task
                                                                   : DemoVariant::nine_task);
            out << "Demo instance: " << instance.tasks() << " tasks, " << instance.clouds()
                << " clouds, " << instance.applications() << " applications\n\nETC (ms)\n";
            out << std::left << std::setw(6) << "task" << std::right;
            for (CloudId c = 0; c < instance.clouds(); ++c) out << std::setw(8) << ("cloud" + std::to_string(c));
            out << "   parents\n";
            for (TaskId t = 0; t < instance.tasks(); ++t) {
                out << std::left << std::setw(6) << demo_task_name(t) << std::right;
                for (CloudId c = 0; c < instance.clouds(); ++c) out << std::setw(8) << instance.etc()(t, c);
                out << "   ";
                for (TaskId p : instance.parents_of(t)) out << demo_task_name(p) << ' ';
                out << '\n';
            }
            out << "\nAll tasks on cloud 0\n";
            print_report(out, instance, Chromosome{std::vector<CloudId>(instance.tasks(), 0)}, true);
            out << "\nGreedy fastest cloud per task\n";
            print_report(out, instance, greedy_min_etc(instance), true);
            const auto result = evolve(instance, demo_ga.config(demo_seed));
            out << "\nGA (" << result.evaluations << " evaluations)\n";
            print_report(out, instance, result.best_genes, true);
            return kOk;
        }

        // run
        ExperimentConfig config;
        if (run_preset == "full") {
            run_classes = "all";
            run_sizes = "512x16,1024x32";
            run_apps = "20,30";
        }
        config.demo = run_preset == "demo" || run_inst.demo;
        try {
            if (!config.demo && run_inst.given()) config.file = run_inst.file_source();
            if (run_classes == "all") {
                config.classes = table_classes();
            } else {
                for (const auto& c : split_list(run_classes)) config.classes.push_back(InstanceClass::parse(c));
            }
            for (const auto& s : split_list(run_sizes)) config.sizes.push_back(DatasetSize::parse(s));
            config.applications = parse_list<std::size_t>(run_apps, "application count");
            config.seeds = parse_list<std::uint64_t>(run_seeds, "seed");
            config.algorithms.clear();
            for (const auto& a : split_list(run_algos)) config.algorithms.push_back(parse_algorithm(a));
            config.edge_prob = run_edge_prob;
            config.random_budget = run_budget;
            config.parallel_runs = run_parallel;
            config.ga = run_ga.config(1);
            config.validate();
        } catch (const ConfigError& e) {
            return usage(e.what());
        }
        if (!run_schedule.empty()) {
            std::size_t n = 0;
            std::size_t q = 0;
            if (config.demo) {
                n = 9;
                q = 4;
            } else if (config.file) {
                n = config.file->tasks;
                q = config.file->clouds;
            } else if (config.sizes.size() == 1) {
                n = config.sizes[0].tasks;
                q = config.sizes[0].clouds;
            } else {
                return usage("--schedule needs a single instance size");
            }
            config.fixed_schedule = parse_schedule_file(run_schedule, n, q);
        }

        const auto rows = run_experiment(config);
        if (run_csv.empty()) {
            write_csv(out, rows);
            if (!run_no_summary) out << '\n';
        } else {
            std::ostringstream body;
            write_csv(body, rows);
            std::ofstream file(run_csv, std::ios::binary | std::ios::trunc);
            if (!file || !(file << body.str()) || !file.flush()) {
                throw IoError("cannot write '" + run_csv + "'");
            }
        }
        if (!run_no_summary) write_summary(out, rows);
        return kOk;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const ConfigError& e) {
        return usage(e.what());
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantViolation;
    }
}

}  // namespace mcsched::cli
