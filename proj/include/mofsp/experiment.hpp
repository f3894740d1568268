#pragma once

#include "mofsp/algorithms.hpp"
#include "mofsp/instance.hpp"
#include "mofsp/pareto_front.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mofsp {

/// Invalid plan or sweep configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Either an instance file or a generator configuration.
struct InstanceSource {
    std::optional<std::string> file;
    std::optional<GeneratorConfig> generator;

    bool operator==(const InstanceSource&) const = default;
};

struct ExperimentPlan {
    std::vector<InstanceSource> instances;
    /// Each entry is a full configuration; its seed field is ignored and
    /// replaced by the derived per-run seed.
    std::vector<AlgoConfig> algorithms;
    std::size_t replications = 30;
    std::uint64_t base_seed = 0;
    std::string output_dir = "results";

    /// Throws ConfigError.
    void validate() const;

    bool operator==(const ExperimentPlan&) const = default;
};

/// Plan JSON. Algorithm entries may give only "algorithm"; unspecified
/// fields fall back to that algorithm's preset.
std::string plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const std::string& text);
ExperimentPlan read_plan_file(const std::string& path);

/// Per-run seed:
///   s = splitmix64(base_seed ^ fnv1a64(instance_name))
///   s = splitmix64(s ^ algorithm_ordinal)      (NSGA2=0, NSGA3=1, SPEA2=2, MOEAD=3)
///   s = splitmix64(s ^ replication)
std::uint64_t derive_run_seed(std::uint64_t base_seed, const std::string& instance_name, Algorithm algorithm,
                              std::size_t replication);

struct RunRecord {
    std::string instance;
    Algorithm algorithm = Algorithm::nsga2;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::int64_t evaluations = 0;
    double rhv = 0.0;
    double spread = 0.0;
    double wall_time_ms = 0.0;
    std::string front_file;  // relative to the output directory
    ParetoFront front;
};

struct ConsolidatedRecord {
    std::string instance;
    Algorithm algorithm = Algorithm::nsga2;
    std::size_t runs = 0;
    double rhv = 0.0;
    double spread = 0.0;
    std::string front_file;
    ParetoFront front;
};

struct ReferenceRecord {
    std::string instance;
    std::string front_file;
    std::size_t contributing_runs = 0;
    ParetoFront front;
};

struct ExperimentRecord {
    std::vector<Instance> instances;
    std::vector<RunRecord> runs;  // instance-major, then algorithm, then replication
    std::vector<ConsolidatedRecord> consolidated;
    std::vector<ReferenceRecord> references;

    std::size_t failed_runs() const;
};

struct ExecutionOptions {
    std::size_t workers = 1;
    bool write_files = true;
};

/// Runs every (instance, algorithm, replication), then builds one reference
/// front per instance from all successful runs and scores each run and each
/// per-algorithm consolidated front against it. Writes runs.csv,
/// consolidated.csv, manifest.json and every front under plan.output_dir.
/// A run that throws is recorded as failed and excluded from the reference.
ExperimentRecord run_experiment(const ExperimentPlan& plan, const ExecutionOptions& options = {});

struct SweepLevel {
    double missing_prob = 0.0;
    std::string instance;
    ParetoFront consolidated;
    std::array<double, kObjectives> min{};
    std::array<double, kObjectives> median{};
    std::array<double, kObjectives> max{};
};

struct SweepReport {
    std::vector<SweepLevel> levels;
    ExperimentRecord experiment;

    bool tardiness_nonincreasing() const;
    bool completion_time_nonincreasing() const;
    /// Relative change of the median from the first to the last level.
    double relative_median_change(std::size_t objective) const;
    /// True if every pair of consecutive levels has overlapping makespan ranges.
    bool makespan_ranges_overlap() const;
};

/// One instance per missing probability, all from `base` (same seed and
/// dimensions), run under `plan` (its instance list is replaced). Writes
/// sweep.csv and sweep.json next to the experiment outputs.
SweepReport missing_ops_sweep(const GeneratorConfig& base, const std::vector<double>& probs, ExperimentPlan plan,
                              const ExecutionOptions& options = {});

/// Median of a sample (mean of the two central values for even sizes).
double median(std::vector<double> values);

}  // namespace mofsp
