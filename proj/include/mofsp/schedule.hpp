#pragma once

#include "mofsp/instance.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mofsp {

/// Job processing order, enforced identically on every machine.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> order) : order_(std::move(order)) {}
    Permutation(std::initializer_list<int> order) : order_(order) {}

    static Permutation identity(int n);

    std::size_t size() const noexcept { return order_.size(); }
    int operator[](std::size_t i) const { return order_[i]; }
    int& operator[](std::size_t i) { return order_[i]; }
    auto begin() const noexcept { return order_.begin(); }
    auto end() const noexcept { return order_.end(); }
    auto begin() noexcept { return order_.begin(); }
    auto end() noexcept { return order_.end(); }
    std::span<const int> view() const noexcept { return order_; }
    const std::vector<int>& values() const noexcept { return order_; }

    /// True iff the order is a bijection on {0, ..., size-1}.
    bool is_valid() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> order_;
};

inline constexpr std::size_t kObjectives = 3;

/// (makespan, weighted total completion time, total tardiness), all minimized.
struct ObjectiveVector {
    std::array<std::int64_t, kObjectives> values{};

    std::int64_t makespan() const noexcept { return values[0]; }
    std::int64_t total_completion_time() const noexcept { return values[1]; }
    std::int64_t total_tardiness() const noexcept { return values[2]; }

    std::int64_t operator[](std::size_t o) const noexcept { return values[o]; }
    std::int64_t& operator[](std::size_t o) noexcept { return values[o]; }

    auto operator<=>(const ObjectiveVector&) const = default;
};

/// Pareto dominance for minimization: a <= b componentwise and a != b.
constexpr bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
    bool strictly = false;
    for (std::size_t o = 0; o < kObjectives; ++o) {
        if (a.values[o] > b.values[o]) return false;
        if (a.values[o] < b.values[o]) strictly = true;
    }
    return strictly;
}

/// c(j, m) is the time job j finishes on machine m.
struct CompletionMatrix {
    int n_jobs = 0;
    int n_machines = 0;
    std::vector<std::int64_t> c;

    std::int64_t operator()(int job, int machine) const {
        return c[static_cast<std::size_t>(job) * n_machines + machine];
    }
    std::int64_t& operator()(int job, int machine) {
        return c[static_cast<std::size_t>(job) * n_machines + machine];
    }
    /// Completion time of the job on the last machine.
    std::int64_t completion(int job) const { return (*this)(job, n_machines - 1); }

    bool operator==(const CompletionMatrix&) const = default;
};

/// Standard permutation flowshop recurrence. A missing operation has zero
/// duration; the job still keeps its place in the order on that machine.
CompletionMatrix completion_times(const Instance& inst, const Permutation& perm);

/// Pure objective evaluation. Throws std::invalid_argument on a length
/// mismatch and std::overflow_error if the weighted sum overflows.
ObjectiveVector evaluate(const Instance& inst, const Permutation& perm);

/// Evaluation bound to one run: counts every call.
class Evaluator {
public:
    explicit Evaluator(const Instance& inst);

    ObjectiveVector operator()(const Permutation& perm);

    std::int64_t count() const noexcept { return count_; }
    const Instance& instance() const noexcept { return inst_; }

private:
    const Instance& inst_;
    std::vector<std::int64_t> machine_free_;
    std::int64_t count_ = 0;
};

}  // namespace mofsp
