#include "mofsp/schedule.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mofsp {

Permutation Permutation::identity(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return Permutation(std::move(order));
}

bool Permutation::is_valid() const {
    std::vector<bool> seen(order_.size(), false);
    for (int v : order_) {
        if (v < 0 || static_cast<std::size_t>(v) >= order_.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

namespace {

void check_dimensions(const Instance& inst, const Permutation& perm) {
    if (perm.size() != static_cast<std::size_t>(inst.n_jobs))
        throw std::invalid_argument(
            fmt::format("permutation has {} jobs, instance has {}", perm.size(), inst.n_jobs));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("objective accumulation overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("objective accumulation overflow");
    return r;
}

// machine_free[m] holds the completion time of the previously scheduled job
// on machine m; after processing a job it holds that job's row.
ObjectiveVector evaluate_with(const Instance& inst, const Permutation& perm, std::vector<std::int64_t>& machine_free) {
    check_dimensions(inst, perm);
    machine_free.assign(static_cast<std::size_t>(inst.n_machines), 0);
    ObjectiveVector out;
    for (int job : perm) {
        const int* p = inst.processing_times.data() + static_cast<std::size_t>(job) * inst.n_machines;
        std::int64_t t = 0;
        for (int m = 0; m < inst.n_machines; ++m) {
            t = std::max(t, machine_free[m]) + p[m];
            machine_free[m] = t;
        }
        out.values[0] = std::max(out.values[0], t);
        out.values[1] = checked_add(out.values[1], checked_mul(inst.weights[job], t));
        out.values[2] += std::max<std::int64_t>(0, t - inst.due_dates[job]);
    }
    return out;
}

}  // namespace

CompletionMatrix completion_times(const Instance& inst, const Permutation& perm) {
    check_dimensions(inst, perm);
    CompletionMatrix cm{inst.n_jobs, inst.n_machines,
                        std::vector<std::int64_t>(static_cast<std::size_t>(inst.n_jobs) * inst.n_machines, 0)};
    int prev = -1;
    for (int job : perm) {
        for (int m = 0; m < inst.n_machines; ++m) {
            const std::int64_t ready_job = m > 0 ? cm(job, m - 1) : 0;
            const std::int64_t ready_machine = prev >= 0 ? cm(prev, m) : 0;
            cm(job, m) = std::max(ready_job, ready_machine) + inst.p(job, m);
        }
        prev = job;
    }
    return cm;
}

ObjectiveVector evaluate(const Instance& inst, const Permutation& perm) {
    std::vector<std::int64_t> buffer;
    return evaluate_with(inst, perm, buffer);
}

Evaluator::Evaluator(const Instance& inst) : inst_(inst) {}

ObjectiveVector Evaluator::operator()(const Permutation& perm) {
    auto out = evaluate_with(inst_, perm, machine_free_);
    ++count_;
    return out;
}

}  // namespace mofsp
