#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mofsp {

inline constexpr int kMaxProcessingTime = 100;

/// Permutation flowshop instance. Processing times are stored job-major;
/// a zero entry is a missing operation.
struct Instance {
    std::string name;
    int n_jobs = 0;
    int n_machines = 0;
    /// Percentage probability of a missing operation the instance was built
    /// with. Metadata only, never used by evaluation.
    double missing_percent = 0.0;
    std::vector<int> processing_times;
    std::vector<std::int64_t> due_dates;
    std::vector<std::int64_t> weights;

    int p(int job, int machine) const {
        return processing_times[static_cast<std::size_t>(job) * n_machines + machine];
    }
    std::span<const int> row(int job) const {
        return {processing_times.data() + static_cast<std::size_t>(job) * n_machines,
                static_cast<std::size_t>(n_machines)};
    }
    std::int64_t total_work(int job) const;

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    bool operator==(const Instance&) const = default;
};

struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool operator==(const RealInterval&) const = default;
};

struct IntInterval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool operator==(const IntInterval&) const = default;
};

struct GeneratorConfig {
    int n_jobs = 1;
    int n_machines = 1;
    double missing_prob = 0.0;
    std::uint64_t seed = 0;
    /// Due date of job j is round(u * total work of j), u ~ U[lo, hi].
    RealInterval due_date_tightness{1.0, 2.0};
    IntInterval weight_range{1, 10};

    void validate() const;
    bool operator==(const GeneratorConfig&) const = default;
};

/// "{n}Jx{m}M-{round(100p)}%", e.g. "30Jx10M-10%".
std::string instance_name(int n_jobs, int n_machines, double missing_prob);

/// Each entry is drawn in two stages: a Bernoulli(missing_prob) trial decides
/// a zero, otherwise the value is uniform on [1, 100]. Both draws are always
/// consumed, so instances sharing a seed but differing in missing_prob are
/// coupled: raising missing_prob only turns more entries into zeros.
Instance generate_instance(const GeneratorConfig& cfg);

/// Malformed instance text. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& what);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

std::string serialize_instance(const Instance& inst);
Instance parse_instance(std::string_view text);

Instance read_instance_file(const std::string& path);
void write_instance_file(const Instance& inst, const std::string& path);

}  // namespace mofsp
