#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcsched/baselines.hpp"
#include "mcsched/benchmark.hpp"
#include "mcsched/fitness.hpp"
#include "mcsched/ga.hpp"
#include "mcsched/model.hpp"

namespace py = pybind11;
using namespace mcsched;

namespace {

WorkloadInstance make_instance(const std::vector<std::vector<double>>& etc,
                               const std::vector<std::vector<int>>& dep,
                               std::vector<AppId> app_of) {
    const std::size_t n = etc.size();
    const std::size_t q = n ? etc.front().size() : 0;
    std::vector<Duration> cells;
    cells.reserve(n * q);
    for (const auto& row : etc) {
        if (row.size() != q) throw DimensionError("ETC rows must all have the same length");
        cells.insert(cells.end(), row.begin(), row.end());
    }
    std::vector<std::uint8_t> dep_cells;
    dep_cells.reserve(n * n);
    if (dep.size() != n) throw DimensionError("dependency matrix must have one row per task");
    for (std::size_t i = 0; i < n; ++i) {
        if (dep[i].size() != n) throw DimensionError("dependency matrix must be square");
        for (std::size_t j = 0; j < n; ++j) {
            if (dep[i][j] != 0 && dep[i][j] != 1) throw NonBinaryError(i, j);
            dep_cells.push_back(static_cast<std::uint8_t>(dep[i][j]));
        }
    }
    return WorkloadInstance(EtcMatrix(n, q, std::move(cells)),
                            DependencyDag(n, std::move(dep_cells)), std::move(app_of));
}

Chromosome to_chromosome(const std::vector<CloudId>& genes) { return Chromosome{genes}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Genetic-algorithm scheduling of dependent tasks on heterogeneous clouds";

    py::register_exception<Error>(m, "SchedulingError", PyExc_ValueError);

    py::class_<WorkloadInstance>(m, "WorkloadInstance")
        .def(py::init(&make_instance), py::arg("etc"), py::arg("dep"),
             py::arg("app_of") = std::vector<AppId>{},
             "etc[task][cloud] in ms; dep[child][parent] in {0, 1}")
        .def_property_readonly("tasks", &WorkloadInstance::tasks)
        .def_property_readonly("clouds", &WorkloadInstance::clouds)
        .def_property_readonly("applications", &WorkloadInstance::applications)
        .def_property_readonly("app_of", &WorkloadInstance::app_of)
        .def_property_readonly("order", &WorkloadInstance::order)
        .def("etc", [](const WorkloadInstance& w, TaskId t, CloudId c) { return w.etc()(t, c); })
        .def("parents",
             [](const WorkloadInstance& w, TaskId t) {
                 auto p = w.parents_of(t);
                 return std::vector<TaskId>(p.begin(), p.end());
             })
        .def("descendants", &WorkloadInstance::descendants_of);

    py::class_<FitnessReport>(m, "FitnessReport")
        .def_readonly("waiting", &FitnessReport::waiting)
        .def_readonly("completion", &FitnessReport::completion)
        .def_readonly("makespan_sum", &FitnessReport::makespan_sum)
        .def_readonly("makespan_max", &FitnessReport::makespan_max)
        .def_readonly("cloud_load", &FitnessReport::cloud_load);

    py::class_<GaResult>(m, "GaResult")
        .def_property_readonly("best_genes", [](const GaResult& r) { return r.best_genes.genes; })
        .def_readonly("best_fitness", &GaResult::best_fitness)
        .def_readonly("trace", &GaResult::trace)
        .def_readonly("evaluations", &GaResult::evaluations);

    m.def("demo_instance",
          [](int variant) {
              return demo_instance(variant == 14 ? DemoVariant::fourteen_task
                                                 : DemoVariant::nine_task);
          },
          py::arg("variant") = 9);

    m.def("generate_instance",
          [](const std::string& cls, std::size_t tasks, std::size_t clouds,
             std::size_t applications, double edge_prob, std::uint64_t seed) {
              InstanceSpec spec;
              spec.cls = InstanceClass::parse(cls);
              spec.tasks = tasks;
              spec.clouds = clouds;
              spec.applications = applications;
              spec.edge_prob = edge_prob;
              spec.seed = seed;
              return generate_instance(spec);
          },
          py::arg("cls"), py::arg("tasks") = 512, py::arg("clouds") = 16,
          py::arg("applications") = 20, py::arg("edge_prob") = 0.3, py::arg("seed") = 1);

    m.def("evaluate",
          [](const WorkloadInstance& w, const std::vector<CloudId>& genes) {
              return evaluate(w, to_chromosome(genes));
          },
          py::arg("instance"), py::arg("genes"));

    m.def("evolve",
          [](const WorkloadInstance& w, std::size_t population_size, std::size_t generations,
             double crossover_prob, double mutation_prob, std::size_t elite_count,
             std::uint64_t seed, unsigned threads) {
              GaConfig c;
              c.population_size = population_size;
              c.generations = generations;
              c.crossover_prob = crossover_prob;
              c.mutation_prob = mutation_prob;
              c.elite_count = elite_count;
              c.seed = seed;
              c.threads = threads;
              py::gil_scoped_release release;
              return evolve(w, c);
          },
          py::arg("instance"), py::arg("population_size") = 50, py::arg("generations") = 200,
          py::arg("crossover_prob") = 0.8, py::arg("mutation_prob") = 0.2,
          py::arg("elite_count") = 2, py::arg("seed") = 1, py::arg("threads") = 1);

    m.def("random_search",
          [](const WorkloadInstance& w, std::size_t budget, std::uint64_t seed) {
              py::gil_scoped_release release;
              return random_search(w, budget, seed);
          },
          py::arg("instance"), py::arg("budget"), py::arg("seed") = 1);

    m.def("greedy_min_etc", [](const WorkloadInstance& w) { return greedy_min_etc(w).genes; });

    m.def("size_dep_mat", [](const std::vector<std::uint64_t>& counts) {
        return size_dep_mat(counts);
    });
}
