#include <doctest.h>

#include "mofsp/experiment.hpp"
#include "mofsp/front_io.hpp"
#include "mofsp/random.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mofsp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mofsp_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// Drops the wall_time_ms column (index 9) from runs.csv.
std::string without_wall_time(const std::string& csv) {
    std::string out;
    for (const auto& line : lines(csv)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (i != 9) out += cells[i] + ",";
        out += "\n";
    }
    return out;
}

GeneratorConfig gen(int n, int m, double p, std::uint64_t seed) {
    GeneratorConfig g;
    g.n_jobs = n;
    g.n_machines = m;
    g.missing_prob = p;
    g.seed = seed;
    return g;
}

ExperimentPlan small_plan(const fs::path& out, std::vector<Algorithm> algos, std::size_t reps) {
    ExperimentPlan plan;
    plan.instances.push_back({std::nullopt, gen(8, 3, 0.1, 1)});
    for (auto a : algos) {
        auto cfg = AlgoConfig::preset(a);
        cfg.max_evaluations = 600;
        plan.algorithms.push_back(cfg);
    }
    plan.replications = reps;
    plan.base_seed = 2024;
    plan.output_dir = out.string();
    return plan;
}

}  // namespace

TEST_CASE("run seeds follow the documented mix") {
    const std::uint64_t s0 = splitmix64(7 ^ fnv1a64("a"));
    const std::uint64_t s1 = splitmix64(s0 ^ 3);
    CHECK(derive_run_seed(7, "a", Algorithm::moead, 5) == splitmix64(s1 ^ 5));
    CHECK(derive_run_seed(7, "a", Algorithm::moead, 5) != derive_run_seed(7, "a", Algorithm::moead, 6));
    CHECK(derive_run_seed(7, "a", Algorithm::nsga2, 0) != derive_run_seed(7, "b", Algorithm::nsga2, 0));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
}

TEST_CASE("plan JSON round trip") {
    ExperimentPlan plan;
    plan.instances.push_back({std::string("inst/a.txt"), std::nullopt});
    plan.instances.push_back({std::nullopt, gen(30, 10, 0.2, 9)});
    plan.algorithms.push_back(AlgoConfig::preset(Algorithm::moead));
    plan.algorithms.push_back(AlgoConfig::preset(Algorithm::spea2));
    plan.replications = 3;
    plan.base_seed = 123456789012345ULL;
    plan.output_dir = "out";
    CHECK(plan_from_json(plan_to_json(plan)) == plan);

    const auto minimal = plan_from_json(R"({"instances":[{"generator":{"jobs":5,"machines":2}}],
                                            "algorithms":[{"algorithm":"NSGA-III"}]})");
    CHECK(minimal.algorithms[0] == AlgoConfig::preset(Algorithm::nsga3));
    CHECK(minimal.replications == 30);
}

TEST_CASE("plan validation") {
    CHECK_THROWS_AS(plan_from_json("{"), ConfigError);
    CHECK_THROWS_AS(plan_from_json(R"({"instances":[],"algorithms":[{"algorithm":"NSGA2"}]})"), ConfigError);
    CHECK_THROWS_AS(plan_from_json(R"({"instances":[{"generator":{"jobs":5,"machines":2}}],
                                       "algorithms":[{"algorithm":"IBEA"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(plan_from_json(R"({"instances":[{"generator":{"jobs":5,"machines":2}}],
                                       "algorithms":[{"algorithm":"NSGA2","population":5}]})"),
                    ConfigError);
    CHECK_THROWS_AS(plan_from_json(R"({"instances":[{"generator":{"jobs":5,"machines":2}}],
                                       "algorithms":[{"algorithm":"NSGA2"}],"replications":0})"),
                    ConfigError);
    CHECK_THROWS_AS(read_plan_file("/nonexistent/plan.json"), ConfigError);
}

TEST_CASE("one instance, one algorithm, two replications") {
    const auto out = scratch("count");
    const auto rec = run_experiment(small_plan(out, {Algorithm::nsga2}, 2));
    CHECK(rec.runs.size() == 2);
    CHECK(rec.failed_runs() == 0);
    const auto runs = lines(slurp(out / "runs.csv"));
    REQUIRE(runs.size() == 3);
    CHECK(runs[0] == "instance,algorithm,replication,seed,status,evaluations,front_size,rhv,spread,wall_time_ms,front_file,error");
    const auto consolidated = lines(slurp(out / "consolidated.csv"));
    CHECK(consolidated.size() == 2);
    CHECK(consolidated[0] == "instance,algorithm,runs,front_size,rhv,spread,front_file");
    CHECK(fs::exists(out / "manifest.json"));
    for (const auto& r : rec.runs) {
        CHECK(r.ok);
        CHECK(r.rhv >= 0.0);
        CHECK(r.rhv <= 1.0);
        CHECK(read_front_file((out / r.front_file).string()) == r.front);
        // any run can be reproduced alone from its derived seed
        auto cfg = small_plan(out, {Algorithm::nsga2}, 2).algorithms[0];
        cfg.seed = derive_run_seed(2024, rec.instances[0].name, Algorithm::nsga2, r.replication);
        CHECK(r.seed == cfg.seed);
        CHECK(run_algorithm(rec.instances[0], cfg).front == r.front);
    }
    fs::remove_all(out);
}

TEST_CASE("record count law and reference front") {
    const auto out = scratch("law");
    auto plan = small_plan(out, {Algorithm::nsga2, Algorithm::nsga3, Algorithm::spea2, Algorithm::moead}, 2);
    plan.instances.push_back({std::nullopt, gen(6, 2, 0.0, 2)});
    const auto rec = run_experiment(plan, {2, true});
    CHECK(rec.runs.size() == 2 * 4 * 2);
    CHECK(lines(slurp(out / "runs.csv")).size() == 1 + 2 * 4 * 2);
    CHECK(rec.consolidated.size() == 2 * 4);
    REQUIRE(rec.references.size() == 2);
    for (const auto& ref : rec.references) {
        CHECK(ref.contributing_runs == 8);
        for (const auto& r : rec.runs)
            if (r.instance == ref.instance)
                for (const auto& p : r.front) CHECK(ref.front.covers(p.objectives));
    }
    fs::remove_all(out);
}

TEST_CASE("rerunning a plan is byte-identical apart from wall time") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    auto plan = small_plan(a, {Algorithm::spea2, Algorithm::moead}, 2);
    run_experiment(plan, {1, true});
    plan.output_dir = b.string();
    run_experiment(plan, {3, true});
    CHECK(without_wall_time(slurp(a / "runs.csv")) == without_wall_time(slurp(b / "runs.csv")));
    CHECK(slurp(a / "consolidated.csv") == slurp(b / "consolidated.csv"));
    for (const auto& entry : fs::recursive_directory_iterator(a / "fronts")) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        CHECK(slurp(entry.path()) == slurp(b / rel));
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("instance files and duplicate names") {
    const auto out = scratch("files");
    fs::create_directories(out);
    const auto inst = generate_instance(gen(5, 2, 0.0, 3));
    write_instance_file(inst, (out / "i.txt").string());

    auto plan = small_plan(out / "res", {Algorithm::nsga2}, 1);
    plan.instances = {{(out / "i.txt").string(), std::nullopt}};
    const auto rec = run_experiment(plan, {1, false});
    CHECK(rec.instances[0] == inst);
    CHECK_FALSE(fs::exists(out / "res" / "runs.csv"));

    plan.instances.push_back({std::nullopt, gen(5, 2, 0.0, 4)});  // same generated name
    CHECK_THROWS_AS(run_experiment(plan, {1, false}), ConfigError);

    plan.instances = {{(out / "missing.txt").string(), std::nullopt}};
    CHECK_THROWS_AS(run_experiment(plan, {1, false}), ConfigError);
    fs::remove_all(out);
}

TEST_CASE("sweep input validation") {
    const auto out = scratch("sweep_bad");
    const auto plan = small_plan(out, {Algorithm::nsga2}, 1);
    const auto base = gen(6, 3, 0.0, 5);
    CHECK_THROWS_AS(missing_ops_sweep(base, {0.0, 0.1, 0.1}, plan, {1, false}), ConfigError);
    CHECK_THROWS_AS(missing_ops_sweep(base, {0.2, 0.1}, plan, {1, false}), ConfigError);
    CHECK_THROWS_AS(missing_ops_sweep(base, {}, plan, {1, false}), ConfigError);
    CHECK_THROWS_AS(missing_ops_sweep(base, {1.0}, plan, {1, false}), ConfigError);
}

TEST_CASE("singleton sweep is trivially monotone") {
    const auto out = scratch("sweep_one");
    const auto plan = small_plan(out, {Algorithm::nsga2}, 1);
    const auto report = missing_ops_sweep(gen(6, 3, 0.0, 5), {0.0}, plan, {1, true});
    REQUIRE(report.levels.size() == 1);
    CHECK_FALSE(report.levels[0].consolidated.empty());
    CHECK(report.tardiness_nonincreasing());
    CHECK(report.completion_time_nonincreasing());
    CHECK(report.makespan_ranges_overlap());
    CHECK(fs::exists(out / "sweep.csv"));
    CHECK(fs::exists(out / "sweep.json"));
    fs::remove_all(out);
}
