#include "mofsp/experiment.hpp"

#include "mofsp/front_io.hpp"
#include "mofsp/metrics.hpp"
#include "mofsp/random.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace mofsp {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- plan JSON

namespace {

json generator_to_json(const GeneratorConfig& g) {
    return json{{"jobs", g.n_jobs},
                {"machines", g.n_machines},
                {"missing", g.missing_prob},
                {"seed", g.seed},
                {"due_date_tightness", {g.due_date_tightness.lo, g.due_date_tightness.hi}},
                {"weight_range", {g.weight_range.lo, g.weight_range.hi}}};
}

GeneratorConfig generator_from_json(const json& j) {
    GeneratorConfig g;
    g.n_jobs = j.at("jobs").get<int>();
    g.n_machines = j.at("machines").get<int>();
    g.missing_prob = j.value("missing", 0.0);
    g.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("due_date_tightness")) {
        const auto& t = j.at("due_date_tightness");
        g.due_date_tightness = {t.at(0).get<double>(), t.at(1).get<double>()};
    }
    if (j.contains("weight_range")) {
        const auto& w = j.at("weight_range");
        g.weight_range = {w.at(0).get<std::int64_t>(), w.at(1).get<std::int64_t>()};
    }
    return g;
}

json algo_to_json(const AlgoConfig& a) {
    return json{{"algorithm", to_string(a.algorithm)},
                {"population", a.population},
                {"crossover_prob", a.crossover_prob},
                {"mutation_prob", a.mutation_prob},
                {"max_evaluations", a.max_evaluations},
                {"neighborhood_frac", a.neighborhood_frac}};
}

AlgoConfig algo_from_json(const json& j) {
    const auto name = j.at("algorithm").get<std::string>();
    const auto algorithm = parse_algorithm(name);
    if (!algorithm) throw ConfigError(fmt::format("unknown algorithm '{}'", name));
    auto a = AlgoConfig::preset(*algorithm);
    a.population = j.value("population", a.population);
    a.crossover_prob = j.value("crossover_prob", a.crossover_prob);
    a.mutation_prob = j.value("mutation_prob", a.mutation_prob);
    a.max_evaluations = j.value("max_evaluations", a.max_evaluations);
    a.neighborhood_frac = j.value("neighborhood_frac", a.neighborhood_frac);
    return a;
}

json plan_json(const ExperimentPlan& plan) {
    json instances = json::array();
    for (const auto& src : plan.instances) {
        if (src.file)
            instances.push_back({{"file", *src.file}});
        else if (src.generator)
            instances.push_back({{"generator", generator_to_json(*src.generator)}});
    }
    json algorithms = json::array();
    for (const auto& a : plan.algorithms) algorithms.push_back(algo_to_json(a));
    return json{{"instances", instances},
                {"algorithms", algorithms},
                {"replications", plan.replications},
                {"base_seed", plan.base_seed},
                {"output_dir", plan.output_dir}};
}

}  // namespace

void ExperimentPlan::validate() const {
    if (instances.empty()) throw ConfigError("plan lists no instances");
    for (const auto& src : instances) {
        if (src.file.has_value() == src.generator.has_value())
            throw ConfigError("each instance entry needs exactly one of 'file' or 'generator'");
        if (src.generator) {
            try {
                src.generator->validate();
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (algorithms.empty()) throw ConfigError("plan lists no algorithms");
    std::set<Algorithm> seen;
    for (const auto& a : algorithms) {
        if (!seen.insert(a.algorithm).second)
            throw ConfigError(fmt::format("algorithm {} listed twice", to_string(a.algorithm)));
        try {
            a.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(fmt::format("{}: {}", to_string(a.algorithm), e.what()));
        }
    }
    if (replications < 1) throw ConfigError("replications must be at least 1");
    if (output_dir.empty()) throw ConfigError("output_dir is empty");
}

std::string plan_to_json(const ExperimentPlan& plan) { return plan_json(plan).dump(2) + "\n"; }

ExperimentPlan plan_from_json(const std::string& text) {
    ExperimentPlan plan;
    try {
        const auto j = json::parse(text);
        for (const auto& entry : j.at("instances")) {
            InstanceSource src;
            if (entry.contains("file")) src.file = entry.at("file").get<std::string>();
            if (entry.contains("generator")) src.generator = generator_from_json(entry.at("generator"));
            plan.instances.push_back(std::move(src));
        }
        for (const auto& entry : j.at("algorithms")) plan.algorithms.push_back(algo_from_json(entry));
        plan.replications = j.value("replications", plan.replications);
        plan.base_seed = j.value("base_seed", plan.base_seed);
        plan.output_dir = j.value("output_dir", plan.output_dir);
    } catch (const json::exception& e) {
        throw ConfigError(fmt::format("malformed plan: {}", e.what()));
    }
    plan.validate();
    return plan;
}

ExperimentPlan read_plan_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot open plan file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_json(buf.str());
}

std::uint64_t derive_run_seed(std::uint64_t base_seed, const std::string& instance_name, Algorithm algorithm,
                              std::size_t replication) {
    std::uint64_t s = splitmix64(base_seed ^ fnv1a64(instance_name));
    s = splitmix64(s ^ static_cast<std::uint64_t>(algorithm));
    return splitmix64(s ^ static_cast<std::uint64_t>(replication));
}

std::size_t ExperimentRecord::failed_runs() const {
    return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [](const RunRecord& r) { return !r.ok; }));
}

double median(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---------------------------------------------------------------- execution

namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string csv_safe(std::string s) {
    std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ' ');
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

std::vector<Instance> load_instances(const ExperimentPlan& plan) {
    std::vector<Instance> out;
    std::set<std::string> names;
    for (const auto& src : plan.instances) {
        Instance inst;
        try {
            inst = src.file ? read_instance_file(*src.file) : generate_instance(*src.generator);
            inst.validate();
        } catch (const std::exception& e) {
            throw ConfigError(fmt::format("instance {}: {}", src.file ? *src.file : std::string("(generated)"),
                                          e.what()));
        }
        if (!names.insert(inst.name).second)
            throw ConfigError(fmt::format("two instances share the name '{}'", inst.name));
        out.push_back(std::move(inst));
    }
    return out;
}

json decision_constants() {
    return json{
        {"hypervolume_reference_point", {kHypervolumeReference[0], kHypervolumeReference[1], kHypervolumeReference[2]}},
        {"normalization", "per-instance reference front: ideal -> 0, nadir -> 1, clamped to [0,1]; zero range -> 0"},
        {"spread_extremes", "per-objective minimizers of the reference front, ties to the lexicographically smallest"},
        {"spread_singleton", 1.0},
        {"distance", "euclidean in normalized space"},
        {"reference_front", "dominance-filtered union of every successful run of the batch for the instance"},
        {"due_dates", "round(u * total work), u ~ U[lo, hi] (default [1, 2])"},
        {"weights", "uniform integer in weight_range (default [1, 10])"},
        {"processing_times", "0 with probability p, else uniform integer in [1, 100]"},
        {"mating_selection", "binary tournament"},
        {"moead_scalarizer",
         "tchebycheff, weights divided by max(nadir - ideal, 1) over the archive, zero weight components -> 1e-6"},
        {"moead_neighborhood", "max(2, round(frac * population))"},
        {"nsga3_reference_directions", "largest Das-Dennis lattice with at most #P points"},
        {"run_seed",
         "s = splitmix64(base_seed ^ fnv1a64(instance)); s = splitmix64(s ^ algorithm_ordinal); "
         "s = splitmix64(s ^ replication)"},
        {"algorithm_ordinals", {{"NSGA2", 0}, {"NSGA3", 1}, {"SPEA2", 2}, {"MOEAD", 3}}}};
}

}  // namespace

ExperimentRecord run_experiment(const ExperimentPlan& plan, const ExecutionOptions& options) {
    plan.validate();
    ExperimentRecord rec;
    rec.instances = load_instances(plan);

    const std::size_t n_alg = plan.algorithms.size();
    const std::size_t reps = plan.replications;
    rec.runs.resize(rec.instances.size() * n_alg * reps);
    for (std::size_t i = 0; i < rec.instances.size(); ++i) {
        for (std::size_t a = 0; a < n_alg; ++a) {
            for (std::size_t r = 0; r < reps; ++r) {
                auto& run = rec.runs[(i * n_alg + a) * reps + r];
                run.instance = rec.instances[i].name;
                run.algorithm = plan.algorithms[a].algorithm;
                run.replication = r;
                run.seed = derive_run_seed(plan.base_seed, run.instance, run.algorithm, r);
                run.front_file =
                    (fs::path("fronts") / run.instance / fmt::format("{}_r{:03}.csv", to_string(run.algorithm), r))
                        .generic_string();
            }
        }
    }

    // Each task only touches its own slot, so worker count cannot change results.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < rec.runs.size(); k = next.fetch_add(1)) {
            auto& run = rec.runs[k];
            const auto& inst = rec.instances[k / (n_alg * reps)];
            auto cfg = plan.algorithms[(k / reps) % n_alg];
            cfg.seed = run.seed;
            try {
                auto result = run_algorithm(inst, cfg);
                run.front = std::move(result.front);
                run.evaluations = result.evaluations_used;
                run.wall_time_ms = std::chrono::duration<double, std::milli>(result.wall_time).count();
                run.ok = true;
            } catch (const std::exception& e) {
                run.ok = false;
                run.error = e.what();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, rec.runs.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    // Indicators: one reference front per instance, after every run finished.
    for (std::size_t i = 0; i < rec.instances.size(); ++i) {
        const auto& name = rec.instances[i].name;
        const auto first = rec.runs.begin() + static_cast<std::ptrdiff_t>(i * n_alg * reps);
        const auto last = first + static_cast<std::ptrdiff_t>(n_alg * reps);

        ReferenceRecord ref_rec;
        ref_rec.instance = name;
        ref_rec.front_file = (fs::path("reference") / (name + ".csv")).generic_string();
        for (auto it = first; it != last; ++it) {
            if (!it->ok) continue;
            for (const auto& p : it->front) ref_rec.front.insert(p);
            ++ref_rec.contributing_runs;
        }
        if (ref_rec.front.empty()) {
            rec.references.push_back(std::move(ref_rec));
            continue;
        }
        const auto ref = ReferenceFront::from(ref_rec.front);
        for (auto it = first; it != last; ++it) {
            if (!it->ok) continue;
            it->rhv = relative_hypervolume(it->front, ref);
            it->spread = spread(it->front, ref);
        }
        for (std::size_t a = 0; a < n_alg; ++a) {
            ConsolidatedRecord c;
            c.instance = name;
            c.algorithm = plan.algorithms[a].algorithm;
            c.front_file = (fs::path("consolidated") / name / (std::string(to_string(c.algorithm)) + ".csv"))
                               .generic_string();
            for (std::size_t r = 0; r < reps; ++r) {
                const auto& run = *(first + static_cast<std::ptrdiff_t>(a * reps + r));
                if (!run.ok) continue;
                for (const auto& p : run.front) c.front.insert(p);
                ++c.runs;
            }
            if (!c.front.empty()) {
                c.rhv = relative_hypervolume(c.front, ref);
                c.spread = spread(c.front, ref);
            }
            rec.consolidated.push_back(std::move(c));
        }
        rec.references.push_back(std::move(ref_rec));
    }

    if (!options.write_files) return rec;

    const fs::path out(plan.output_dir);
    fs::create_directories(out);
    for (const auto& inst : rec.instances) write_text(out / "instances" / (inst.name + ".txt"), serialize_instance(inst));
    for (const auto& run : rec.runs)
        if (run.ok) write_text(out / run.front_file, front_to_csv(run.front));
    for (const auto& ref : rec.references)
        if (!ref.front.empty()) write_text(out / ref.front_file, front_to_csv(ref.front));
    for (const auto& c : rec.consolidated)
        if (c.runs > 0) write_text(out / c.front_file, front_to_csv(c.front));

    std::string runs_csv =
        "instance,algorithm,replication,seed,status,evaluations,front_size,rhv,spread,wall_time_ms,front_file,error\n";
    for (const auto& run : rec.runs) {
        if (run.ok)
            runs_csv += fmt::format("{},{},{},{},ok,{},{},{},{},{},{},\n", run.instance, to_string(run.algorithm),
                                    run.replication, run.seed, run.evaluations, run.front.size(), num(run.rhv),
                                    num(run.spread), fmt::format("{:.3f}", run.wall_time_ms), run.front_file);
        else
            runs_csv += fmt::format("{},{},{},{},error,,,,,,,{}\n", run.instance, to_string(run.algorithm),
                                    run.replication, run.seed, csv_safe(run.error));
    }
    write_text(out / "runs.csv", runs_csv);

    std::string cons_csv = "instance,algorithm,runs,front_size,rhv,spread,front_file\n";
    for (const auto& c : rec.consolidated) {
        if (c.runs > 0)
            cons_csv += fmt::format("{},{},{},{},{},{},{}\n", c.instance, to_string(c.algorithm), c.runs,
                                    c.front.size(), num(c.rhv), num(c.spread), c.front_file);
        else
            cons_csv += fmt::format("{},{},0,0,,,\n", c.instance, to_string(c.algorithm));
    }
    write_text(out / "consolidated.csv", cons_csv);

    json manifest;
    manifest["plan"] = plan_json(plan);
    manifest["decisions"] = decision_constants();
    json instances = json::array();
    for (const auto& inst : rec.instances)
        instances.push_back({{"name", inst.name},
                             {"jobs", inst.n_jobs},
                             {"machines", inst.n_machines},
                             {"missing_percent", inst.missing_percent},
                             {"file", (fs::path("instances") / (inst.name + ".txt")).generic_string()}});
    manifest["instances"] = instances;
    json runs = json::array();
    for (const auto& run : rec.runs)
        runs.push_back({{"instance", run.instance},
                        {"algorithm", to_string(run.algorithm)},
                        {"replication", run.replication},
                        {"seed", run.seed},
                        {"status", run.ok ? "ok" : "error"},
                        {"front_file", run.ok ? json(run.front_file) : json(nullptr)}});
    manifest["runs"] = runs;
    json refs = json::array();
    for (std::size_t i = 0; i < rec.references.size(); ++i) {
        const auto& ref = rec.references[i];
        json fed = json::array();
        for (std::size_t k = i * n_alg * reps; k < (i + 1) * n_alg * reps; ++k)
            if (rec.runs[k].ok) fed.push_back(rec.runs[k].front_file);
        refs.push_back({{"instance", ref.instance},
                        {"file", ref.front.empty() ? json(nullptr) : json(ref.front_file)},
                        {"size", ref.front.size()},
                        {"runs", fed}});
    }
    manifest["reference_fronts"] = refs;
    write_text(out / "manifest.json", manifest.dump(2) + "\n");
    return rec;
}

// ---------------------------------------------------------------- sweep

bool SweepReport::tardiness_nonincreasing() const {
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (levels[k].median[2] > levels[k - 1].median[2]) return false;
    return true;
}

bool SweepReport::completion_time_nonincreasing() const {
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (levels[k].median[1] > levels[k - 1].median[1]) return false;
    return true;
}

double SweepReport::relative_median_change(std::size_t objective) const {
    if (levels.empty()) return 0.0;
    const double first = levels.front().median[objective];
    const double last = levels.back().median[objective];
    if (first == 0.0) return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return (last - first) / first;
}

bool SweepReport::makespan_ranges_overlap() const {
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (levels[k].min[0] > levels[k - 1].max[0] || levels[k - 1].min[0] > levels[k].max[0]) return false;
    return true;
}

SweepReport missing_ops_sweep(const GeneratorConfig& base, const std::vector<double>& probs, ExperimentPlan plan,
                              const ExecutionOptions& options) {
    if (probs.empty()) throw ConfigError("sweep needs at least one missing probability");
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (!(probs[k] >= 0.0 && probs[k] < 1.0)) throw ConfigError("missing probabilities must lie in [0, 1)");
        if (k > 0 && probs[k] == probs[k - 1]) throw ConfigError("duplicate missing probability in sweep");
        if (k > 0 && probs[k] < probs[k - 1]) throw ConfigError("missing probabilities must be sorted ascending");
    }

    plan.instances.clear();
    for (double p : probs) {
        auto cfg = base;
        cfg.missing_prob = p;
        plan.instances.push_back({std::nullopt, cfg});
    }

    SweepReport report;
    report.experiment = run_experiment(plan, options);
    for (std::size_t k = 0; k < probs.size(); ++k) {
        SweepLevel level;
        level.missing_prob = probs[k];
        level.instance = report.experiment.instances[k].name;
        level.consolidated = report.experiment.references[k].front;
        for (std::size_t o = 0; o < kObjectives; ++o) {
            std::vector<double> values;
            for (const auto& p : level.consolidated) values.push_back(static_cast<double>(p.objectives[o]));
            if (values.empty()) continue;
            level.min[o] = *std::min_element(values.begin(), values.end());
            level.max[o] = *std::max_element(values.begin(), values.end());
            level.median[o] = median(std::move(values));
        }
        report.levels.push_back(std::move(level));
    }

    if (options.write_files) {
        const fs::path out(plan.output_dir);
        std::string csv =
            "missing_prob,instance,front_size,min_makespan,median_makespan,max_makespan,min_wtct,median_wtct,"
            "max_wtct,min_tardiness,median_tardiness,max_tardiness,front_file\n";
        for (const auto& l : report.levels)
            csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num(l.missing_prob), l.instance,
                               l.consolidated.size(), num(l.min[0]), num(l.median[0]), num(l.max[0]), num(l.min[1]),
                               num(l.median[1]), num(l.max[1]), num(l.min[2]), num(l.median[2]), num(l.max[2]),
                               (fs::path("reference") / (l.instance + ".csv")).generic_string());
        write_text(out / "sweep.csv", csv);

        json summary{{"probs", probs},
                     {"median_tardiness_nonincreasing", report.tardiness_nonincreasing()},
                     {"median_wtct_nonincreasing", report.completion_time_nonincreasing()},
                     {"relative_median_change",
                      {{"makespan", report.relative_median_change(0)},
                       {"wtct", report.relative_median_change(1)},
                       {"tardiness", report.relative_median_change(2)}}},
                     {"makespan_ranges_overlap", report.makespan_ranges_overlap()}};
        write_text(out / "sweep.json", summary.dump(2) + "\n");
    }
    return report;
}

}  // namespace mofsp
