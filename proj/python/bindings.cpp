#include "mofsp/algorithms.hpp"
#include "mofsp/experiment.hpp"
#include "mofsp/front_io.hpp"
#include "mofsp/instance.hpp"
#include "mofsp/metrics.hpp"
#include "mofsp/moea_core.hpp"
#include "mofsp/schedule.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <spdlog/spdlog.h>

namespace py = pybind11;
using namespace mofsp;

namespace {

using Objectives = std::array<std::int64_t, kObjectives>;
using PyPoint = std::pair<Objectives, std::vector<int>>;

std::vector<PyPoint> to_py(const ParetoFront& f) {
    std::vector<PyPoint> out;
    out.reserve(f.size());
    for (const auto& p : f) out.emplace_back(p.objectives.values, p.permutation.values());
    return out;
}

ParetoFront from_py(const std::vector<PyPoint>& pts) {
    std::vector<FrontPoint> fp;
    fp.reserve(pts.size());
    for (const auto& [obj, perm] : pts) fp.push_back({ObjectiveVector{obj}, Permutation(perm)});
    return ParetoFront::from_points(fp);
}

ParetoFront from_objectives(const std::vector<Objectives>& pts) {
    ParetoFront f;
    for (const auto& o : pts) f.insert(ObjectiveVector{o}, Permutation{});
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Multi-objective permutation flowshop with missing operations";
    spdlog::set_level(spdlog::level::err);

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Instance>(m, "Instance")
        .def(py::init<>())
        .def_readwrite("name", &Instance::name)
        .def_readwrite("n_jobs", &Instance::n_jobs)
        .def_readwrite("n_machines", &Instance::n_machines)
        .def_readwrite("missing_percent", &Instance::missing_percent)
        .def_readwrite("due_dates", &Instance::due_dates)
        .def_readwrite("weights", &Instance::weights)
        .def_property(
            "processing_times",
            [](const Instance& inst) {
                std::vector<std::vector<int>> rows;
                for (int j = 0; j < inst.n_jobs; ++j) {
                    const auto r = inst.row(j);
                    rows.emplace_back(r.begin(), r.end());
                }
                return rows;
            },
            [](Instance& inst, const std::vector<std::vector<int>>& rows) {
                inst.processing_times.clear();
                for (const auto& r : rows) inst.processing_times.insert(inst.processing_times.end(), r.begin(), r.end());
            },
            "Rows are jobs, columns machines")
        .def("validate", &Instance::validate)
        .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
        .def("__repr__", [](const Instance& i) { return "<Instance " + i.name + ">"; });

    py::class_<GeneratorConfig>(m, "GeneratorConfig")
        .def(py::init([](int jobs, int machines, double missing, std::uint64_t seed, std::pair<double, double> due,
                         std::pair<std::int64_t, std::int64_t> weights) {
                 GeneratorConfig g;
                 g.n_jobs = jobs;
                 g.n_machines = machines;
                 g.missing_prob = missing;
                 g.seed = seed;
                 g.due_date_tightness = {due.first, due.second};
                 g.weight_range = {weights.first, weights.second};
                 return g;
             }),
             py::arg("jobs"), py::arg("machines"), py::arg("missing") = 0.0, py::arg("seed") = 0,
             py::arg("due_date_tightness") = std::pair<double, double>{1.0, 2.0},
             py::arg("weight_range") = std::pair<std::int64_t, std::int64_t>{1, 10})
        .def_readwrite("jobs", &GeneratorConfig::n_jobs)
        .def_readwrite("machines", &GeneratorConfig::n_machines)
        .def_readwrite("missing", &GeneratorConfig::missing_prob)
        .def_readwrite("seed", &GeneratorConfig::seed);

    m.def("generate_instance", &generate_instance, py::arg("config"));
    m.def("instance_name", &instance_name, py::arg("jobs"), py::arg("machines"), py::arg("missing"));
    m.def("serialize_instance", &serialize_instance, py::arg("instance"));
    m.def("parse_instance", &parse_instance, py::arg("text"));
    m.def("read_instance", &read_instance_file, py::arg("path"));
    m.def("write_instance", &write_instance_file, py::arg("instance"), py::arg("path"));

    m.def(
        "completion_times",
        [](const Instance& inst, const std::vector<int>& perm) {
            const auto c = completion_times(inst, Permutation(perm));
            std::vector<std::vector<std::int64_t>> rows;
            for (int j = 0; j < c.n_jobs; ++j) {
                rows.emplace_back();
                for (int k = 0; k < c.n_machines; ++k) rows.back().push_back(c(j, k));
            }
            return rows;
        },
        py::arg("instance"), py::arg("permutation"), "Job-major completion times");
    m.def(
        "evaluate", [](const Instance& inst, const std::vector<int>& perm) {
            return evaluate(inst, Permutation(perm)).values;
        },
        py::arg("instance"), py::arg("permutation"), "(makespan, weighted completion time, total tardiness)");

    m.def(
        "pmx_crossover",
        [](const std::vector<int>& a, const std::vector<int>& b, std::size_t lo, std::size_t hi) {
            auto [c1, c2] = pmx_crossover(Permutation(a), Permutation(b), CutPoints{lo, hi});
            return std::make_pair(c1.values(), c2.values());
        },
        py::arg("a"), py::arg("b"), py::arg("lo"), py::arg("hi"));
    m.def(
        "nondominated_sort",
        [](const std::vector<Objectives>& pts) {
            std::vector<ObjectiveVector> v;
            for (const auto& p : pts) v.push_back(ObjectiveVector{p});
            return fast_nondominated_sort(v);
        },
        py::arg("points"));

    py::enum_<Algorithm>(m, "Algorithm")
        .value("NSGA2", Algorithm::nsga2)
        .value("NSGA3", Algorithm::nsga3)
        .value("SPEA2", Algorithm::spea2)
        .value("MOEAD", Algorithm::moead);

    py::class_<AlgoConfig>(m, "AlgoConfig")
        .def_static(
            "preset",
            [](const py::object& a, std::uint64_t seed) {
                if (py::isinstance<py::str>(a)) {
                    const auto parsed = parse_algorithm(py::cast<std::string>(a));
                    if (!parsed) throw py::value_error("unknown algorithm " + py::cast<std::string>(a));
                    return AlgoConfig::preset(*parsed, seed);
                }
                return AlgoConfig::preset(py::cast<Algorithm>(a), seed);
            },
            py::arg("algorithm"), py::arg("seed") = 0)
        .def_readwrite("algorithm", &AlgoConfig::algorithm)
        .def_readwrite("population", &AlgoConfig::population)
        .def_readwrite("crossover_prob", &AlgoConfig::crossover_prob)
        .def_readwrite("mutation_prob", &AlgoConfig::mutation_prob)
        .def_readwrite("max_evaluations", &AlgoConfig::max_evaluations)
        .def_readwrite("neighborhood_frac", &AlgoConfig::neighborhood_frac)
        .def_readwrite("seed", &AlgoConfig::seed)
        .def("validate", &AlgoConfig::validate);

    m.def(
        "run_algorithm",
        [](const Instance& inst, const AlgoConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_algorithm(inst, cfg);
            }
            py::dict out;
            out["front"] = to_py(r.front);
            out["evaluations"] = r.evaluations_used;
            out["wall_time_s"] = std::chrono::duration<double>(r.wall_time).count();
            out["seed"] = r.seed;
            out["algorithm"] = std::string(to_string(r.algorithm));
            return out;
        },
        py::arg("instance"), py::arg("config"),
        "Returns a dict with 'front' as a list of ((makespan, wtct, tardiness), permutation)");

    m.def(
        "hypervolume3",
        [](const std::vector<RealPoint>& pts, const RealPoint& ref) { return hypervolume3(pts, ref); },
        py::arg("points"), py::arg("ref") = kHypervolumeReference, "Points are normalized objective triples");
    m.def(
        "relative_hypervolume",
        [](const std::vector<Objectives>& front, const std::vector<Objectives>& ref) {
            return relative_hypervolume(from_objectives(front), ReferenceFront::from(from_objectives(ref)));
        },
        py::arg("front"), py::arg("reference"), "Fronts as lists of objective triples");
    m.def(
        "spread",
        [](const std::vector<Objectives>& front, const std::vector<Objectives>& ref) {
            return spread(from_objectives(front), ReferenceFront::from(from_objectives(ref)));
        },
        py::arg("front"), py::arg("reference"));
    m.def(
        "consolidate",
        [](const std::vector<std::vector<PyPoint>>& fronts) {
            std::vector<ParetoFront> fs;
            for (const auto& f : fronts) fs.push_back(from_py(f));
            return to_py(consolidate(fs));
        },
        py::arg("fronts"));
    m.def("read_front", [](const std::string& path) { return to_py(read_front_file(path)); }, py::arg("path"));
    m.def(
        "write_front", [](const std::vector<PyPoint>& pts, const std::string& path) { write_front_file(from_py(pts), path); },
        py::arg("front"), py::arg("path"));

    m.def("derive_run_seed", &derive_run_seed, py::arg("base_seed"), py::arg("instance_name"), py::arg("algorithm"),
          py::arg("replication"));
    m.def(
        "run_plan",
        [](const std::string& plan_json, std::size_t workers) {
            const auto plan = plan_from_json(plan_json);
            ExperimentRecord rec;
            {
                py::gil_scoped_release release;
                rec = run_experiment(plan, {workers, true});
            }
            py::dict out;
            out["runs"] = rec.runs.size();
            out["failed"] = rec.failed_runs();
            out["output_dir"] = plan.output_dir;
            return out;
        },
        py::arg("plan_json"), py::arg("workers") = 1, "Runs a plan given as JSON text and writes its outputs");
}
