#include "mofsp/experiment.hpp"
#include "mofsp/front_io.hpp"
#include "mofsp/instance.hpp"
#include "mofsp/metrics.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include <charconv>
#include <cstdio>
#include <thread>

using namespace mofsp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

int report(const ExperimentRecord& rec, const std::string& out) {
    const auto failed = rec.failed_runs();
    fmt::print("{} run(s), {} failed; results in {}\n", rec.runs.size(), failed, out);
    return failed > 0 ? kExitPartial : kExitOk;
}

// "30x20" -> (30, 20)
std::pair<int, int> parse_dimensions(const std::string& text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw ConfigError(fmt::format("--base expects JOBSxMACHINES, got '{}'", text));
    int n = 0, m = 0;
    const auto* b = text.data();
    const auto r1 = std::from_chars(b, b + x, n);
    const auto r2 = std::from_chars(b + x + 1, b + text.size(), m);
    if (r1.ec != std::errc{} || r1.ptr != b + x || r2.ec != std::errc{} || r2.ptr != b + text.size())
        throw ConfigError(fmt::format("--base expects JOBSxMACHINES, got '{}'", text));
    return {n, m};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective permutation flowshop with missing operations"};
    app.require_subcommand(1);
    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, err, off")->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    GeneratorConfig gcfg;
    std::string gen_out;
    gen->add_option("--jobs", gcfg.n_jobs, "Number of jobs")->required();
    gen->add_option("--machines", gcfg.n_machines, "Number of machines")->required();
    gen->add_option("--missing", gcfg.missing_prob, "Missing-operation probability in [0, 1)")->capture_default_str();
    gen->add_option("--seed", gcfg.seed, "Generator seed")->capture_default_str();
    gen->add_option("--due-lo", gcfg.due_date_tightness.lo, "Due date factor, lower bound")->capture_default_str();
    gen->add_option("--due-hi", gcfg.due_date_tightness.hi, "Due date factor, upper bound")->capture_default_str();
    gen->add_option("--weight-lo", gcfg.weight_range.lo, "Smallest weight")->capture_default_str();
    gen->add_option("--weight-hi", gcfg.weight_range.hi, "Largest weight")->capture_default_str();
    gen->add_option("--out", gen_out, "Output file (stdout if omitted)");

    // run
    auto* run = app.add_subcommand("run", "Run an experiment plan");
    std::string plan_path;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::string output_override;
    run->add_option("--plan", plan_path, "Plan JSON file")->required();
    run->add_option("--workers", workers, "Concurrent runs")->capture_default_str();
    run->add_option("--output", output_override, "Override the plan's output_dir");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Missing-operations sweep over one instance family");
    std::string base_dims = "30x20";
    std::uint64_t sweep_seed = 0;
    std::string probs_text = "0,0.1,0.2";
    std::string sweep_plan;
    std::size_t sweep_reps = 10;
    std::int64_t sweep_evals = kDefaultEvaluationBudget;
    std::string sweep_out = "sweep";
    std::uint64_t sweep_base_seed = 0;
    sweep->add_option("--base", base_dims, "Instance dimensions as JOBSxMACHINES")->capture_default_str();
    sweep->add_option("--seed", sweep_seed, "Instance generator seed")->capture_default_str();
    sweep->add_option("--probs", probs_text, "Comma-separated missing probabilities, ascending")
        ->capture_default_str();
    sweep->add_option("--plan", sweep_plan, "Plan JSON supplying algorithms, replications and seed");
    sweep->add_option("--replications", sweep_reps, "Runs per algorithm (without --plan)")->capture_default_str();
    sweep->add_option("--evaluations", sweep_evals, "Evaluation budget (without --plan)")->capture_default_str();
    sweep->add_option("--base-seed", sweep_base_seed, "Run seed base (without --plan)")->capture_default_str();
    sweep->add_option("--output", sweep_out, "Output directory")->capture_default_str();
    sweep->add_option("--workers", workers, "Concurrent runs")->capture_default_str();

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Score a front against a reference front");
    std::string front_path, ref_path;
    metrics->add_option("--front", front_path, "Front CSV")->required();
    metrics->add_option("--ref", ref_path, "Reference front CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    spdlog::set_level(spdlog::level::from_str(log_level));

    try {
        if (*gen) {
            const auto inst = generate_instance(gcfg);
            if (gen_out.empty())
                fmt::print("{}", serialize_instance(inst));
            else
                write_instance_file(inst, gen_out);
            return kExitOk;
        }
        if (*run) {
            auto plan = read_plan_file(plan_path);
            if (!output_override.empty()) plan.output_dir = output_override;
            return report(run_experiment(plan, {workers, true}), plan.output_dir);
        }
        if (*sweep) {
            const auto [n, m] = parse_dimensions(base_dims);
            GeneratorConfig base;
            base.n_jobs = n;
            base.n_machines = m;
            base.seed = sweep_seed;

            std::vector<double> probs;
            for (const auto& tok : CLI::detail::split(probs_text, ',')) {
                try {
                    std::size_t used = 0;
                    probs.push_back(std::stod(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::logic_error&) {
                    throw ConfigError(fmt::format("--probs: '{}' is not a number", tok));
                }
            }

            ExperimentPlan plan;
            if (!sweep_plan.empty()) {
                plan = read_plan_file(sweep_plan);
            } else {
                for (auto a : kAllAlgorithms) {
                    auto cfg = AlgoConfig::preset(a);
                    cfg.max_evaluations = sweep_evals;
                    plan.algorithms.push_back(cfg);
                }
                plan.replications = sweep_reps;
                plan.base_seed = sweep_base_seed;
            }
            plan.output_dir = sweep_out;
            const auto rep = missing_ops_sweep(base, probs, plan, {workers, true});
            for (const auto& l : rep.levels)
                fmt::print("p={:<5} {:<16} front={:<4} median makespan={} wtct={} tardiness={}\n", l.missing_prob,
                           l.instance, l.consolidated.size(), l.median[0], l.median[1], l.median[2]);
            fmt::print("tardiness median non-increasing: {}\n", rep.tardiness_nonincreasing());
            fmt::print("wtct median non-increasing: {}\n", rep.completion_time_nonincreasing());
            fmt::print("relative median change: makespan {:.4f}, wtct {:.4f}, tardiness {:.4f}\n",
                       rep.relative_median_change(0), rep.relative_median_change(1), rep.relative_median_change(2));
            fmt::print("makespan ranges overlap: {}\n", rep.makespan_ranges_overlap());
            return report(rep.experiment, plan.output_dir);
        }
        if (*metrics) {
            const auto front = read_front_file(front_path);
            const auto ref = ReferenceFront::from(read_front_file(ref_path));
            if (front.empty()) throw ConfigError(fmt::format("front file '{}' has no points", front_path));
            fmt::print("rhv,spread\n{:.12g},{:.12g}\n", relative_hypervolume(front, ref), spread(front, ref));
            return kExitOk;
        }
    } catch (const std::exception& e) {
        // bad plans, unreadable or malformed files, invalid generator settings
        spdlog::error("{}", e.what());
        return kExitConfig;
    }
    return kExitOk;
}
