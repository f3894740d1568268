// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "mofsp/algorithms.hpp"
#include "mofsp/experiment.hpp"
#include "mofsp/metrics.hpp"
#include "mofsp/moea_core.hpp"
#include "oracles.hpp"

#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

using namespace mofsp;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        out.ok = false;
        out.detail += fmt::format("; exceeded {:.0f} s", limit_seconds);
    }
    if (!out.ok) ++failures;
    fmt::print("{} [{}] {} ({}; {:.1f} s)\n", out.ok ? "PASS" : "FAIL", id, title, out.detail, secs);
    std::fflush(stdout);
}

GeneratorConfig gen(int n, int m, double p, std::uint64_t seed) {
    GeneratorConfig g;
    g.n_jobs = n;
    g.n_machines = m;
    g.missing_prob = p;
    g.seed = seed;
    return g;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome evaluator_oracle() {
    std::mt19937_64 rng(1);
    const double probs[] = {0.0, 0.2, 0.6};
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const int m = 1 + static_cast<int>(rng() % 5);
        const auto inst = oracle::random_instance(rng, n, m, probs[trial % 3]);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        if (completion_times(inst, Permutation(order)).c != oracle::simulate(inst, order)) ++mismatches;
    }
    return {mismatches == 0, fmt::format("{} of 1000 pairs differ", mismatches)};
}

Outcome exact_front_convergence() {
    const int sizes[] = {6, 7, 8};
    const int machines[] = {2, 3};
    const double probs[] = {0.0, 0.1, 0.2};
    std::array<int, 4> hits{};
    std::array<double, 4> worst{1, 1, 1, 1};
    for (int k = 0; k < 20; ++k) {
        const auto inst = generate_instance(gen(sizes[k % 3], machines[k % 2], probs[k % 3], 1000 + k));
        ParetoFront truth;
        std::vector<int> order(inst.n_jobs);
        for (int i = 0; i < inst.n_jobs; ++i) order[i] = i;
        do {
            truth.insert(evaluate(inst, Permutation(order)), Permutation(order));
        } while (std::next_permutation(order.begin(), order.end()));
        const auto ref = ReferenceFront::from(truth);
        for (auto a : kAllAlgorithms) {
            const auto r = run_algorithm(inst, AlgoConfig::preset(a, 500 + k));
            const double rhv = relative_hypervolume(r.front, ref);
            const auto idx = static_cast<std::size_t>(a);
            hits[idx] += rhv >= 0.99 ? 1 : 0;
            worst[idx] = std::min(worst[idx], rhv);
        }
    }
    bool ok = true;
    std::string detail;
    for (auto a : kAllAlgorithms) {
        const auto idx = static_cast<std::size_t>(a);
        ok = ok && hits[idx] >= 18;
        detail += fmt::format("{}{} {}/20 (min {:.4f})", detail.empty() ? "" : ", ", to_string(a), hits[idx],
                              worst[idx]);
    }
    return {ok, detail};
}

Outcome hypervolume_correctness() {
    const std::vector<RealPoint> box{{0.5, 0.5, 0.5}};
    const double single = hypervolume3(box, RealPoint{1, 1, 1});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.1);
    double max_err = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<RealPoint> pts(n);
        std::vector<std::array<double, 3>> raw(n);
        for (std::size_t i = 0; i < n; ++i)
            for (int o = 0; o < 3; ++o) pts[i][o] = raw[i][o] = trial % 2 ? std::round(u(rng) * 10) / 10 : u(rng);
        max_err = std::max(max_err, std::abs(hypervolume3(pts, kHypervolumeReference) -
                                             oracle::inclusion_exclusion_hv(raw, kHypervolumeReference)));
    }
    return {single == 0.125 && max_err <= 1e-12, fmt::format("single box {}, max error {:.2e}", single, max_err)};
}

Outcome indicator_identities() {
    std::mt19937_64 rng(4);
    int rhv_ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ParetoFront f;
        const std::size_t n = 1 + rng() % 40;
        while (f.size() < n) {
            const auto a = static_cast<std::int64_t>(rng() % 1001);
            const auto b = static_cast<std::int64_t>(rng() % (1001 - a));
            f.insert(ObjectiveVector{{a, b, 1000 - a - b}}, Permutation{0});
        }
        if (f.size() == 1) f.insert(ObjectiveVector{{1001, 0, 0}}, Permutation{0});
        rhv_ok += relative_hypervolume(f, ReferenceFront::from(f)) == 1.0 ? 1 : 0;
    }
    ParetoFront uniform;
    for (std::int64_t t = 0; t <= 10; ++t) uniform.insert(ObjectiveVector{{t, 10 - t, 3}}, Permutation{0});
    const double s_uniform = spread(uniform, ReferenceFront::from(uniform));
    ParetoFront single;
    single.insert(ObjectiveVector{{4, 5, 6}}, Permutation{0});
    const double s_single = spread(single, ReferenceFront::from(uniform));
    const bool ok = rhv_ok == 100 && std::abs(s_uniform) <= 1e-9 && s_single == 1.0;
    return {ok, fmt::format("RHV(F,F)=1 on {}/100, uniform spread {:.1e}, singleton spread {}", rhv_ok, s_uniform,
                            s_single)};
}

Outcome operator_properties() {
    RandomStream rng(5);
    int bad_pmx = 0, bad_swap = 0;
    for (int trial = 0; trial < 100'000; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(59));
        const auto a = random_permutation(n, rng);
        const auto b = random_permutation(n, rng);
        const auto cuts = draw_cut_points(a.size(), rng);
        const auto [c1, c2] = pmx_crossover(a, b, cuts);
        bool ok = c1.is_valid() && c2.is_valid();
        for (std::size_t i = cuts.lo; i < cuts.hi; ++i) ok = ok && c1[i] == a[i] && c2[i] == b[i];
        bad_pmx += ok ? 0 : 1;

        const auto s = swap_mutation(a, rng);
        std::size_t hamming = 0;
        for (std::size_t i = 0; i < a.size(); ++i) hamming += a[i] != s[i] ? 1 : 0;
        bad_swap += s.is_valid() && hamming == 2 ? 0 : 1;
    }
    return {bad_pmx == 0 && bad_swap == 0,
            fmt::format("{} bad PMX, {} bad swap in 100000 each", bad_pmx, bad_swap)};
}

Outcome determinism() {
    const auto root = fs::temp_directory_path() / "mofsp_acceptance_determinism";
    fs::remove_all(root);
    ExperimentPlan plan;
    plan.instances.push_back({std::nullopt, gen(20, 5, 0.1, 61)});
    plan.instances.push_back({std::nullopt, gen(15, 10, 0.2, 62)});
    for (auto a : kAllAlgorithms) {
        auto cfg = AlgoConfig::preset(a);
        cfg.max_evaluations = 20'000;
        plan.algorithms.push_back(cfg);
    }
    plan.replications = 5;
    plan.base_seed = 6;
    plan.output_dir = (root / "w1").string();
    run_experiment(plan, {1, true});
    plan.output_dir = (root / "w8").string();
    run_experiment(plan, {8, true});

    std::size_t files = 0, differing = 0;
    for (const auto& e : fs::recursive_directory_iterator(root / "w1")) {
        if (!e.is_regular_file() || e.path().extension() != ".csv" || e.path().filename() == "runs.csv") continue;
        ++files;
        const auto other = root / "w8" / fs::relative(e.path(), root / "w1");
        differing += slurp(e.path()) == slurp(other) ? 0 : 1;
    }
    fs::remove_all(root);
    return {files >= 40 && differing == 0, fmt::format("{} front files compared, {} differ", files, differing)};
}

Outcome missing_ops_trend() {
    ExperimentPlan plan;
    for (auto a : kAllAlgorithms) plan.algorithms.push_back(AlgoConfig::preset(a));
    plan.replications = 10;
    plan.base_seed = 7;
    plan.output_dir = (fs::temp_directory_path() / "mofsp_acceptance_sweep").string();
    const auto workers = std::max(1u, std::thread::hardware_concurrency());
    const auto rep = missing_ops_sweep(gen(30, 20, 0.0, 7), {0.0, 0.1, 0.2}, plan, {workers, false});

    std::string detail;
    for (const auto& l : rep.levels)
        detail += fmt::format("p={} med(Cmax,WTCT,T)=({}, {}, {}); ", l.missing_prob, l.median[0], l.median[1],
                              l.median[2]);
    const double dc = rep.relative_median_change(0);
    const double dt = rep.relative_median_change(2);
    detail += fmt::format("rel change makespan {:.3f} vs tardiness {:.3f}", dc, dt);
    const bool ok = rep.experiment.failed_runs() == 0 && rep.tardiness_nonincreasing() &&
                    rep.completion_time_nonincreasing() && std::abs(dc) < std::abs(dt);
    return {ok, detail};
}

}  // namespace

int main() {
    spdlog::set_level(spdlog::level::err);
    criterion(1, "evaluator matches the discrete-event simulator", 5, evaluator_oracle);
    criterion(2, "exact-front convergence, RHV >= 0.99 on >= 18/20 per algorithm", 600, exact_front_convergence);
    criterion(3, "hypervolume agrees with inclusion-exclusion", 10, hypervolume_correctness);
    criterion(4, "indicator identities", 0, indicator_identities);
    criterion(5, "PMX and swap operator properties", 0, operator_properties);
    criterion(6, "1 worker and 8 workers give byte-identical fronts", 0, determinism);
    criterion(7, "missing-operations trend on 30x20", 900, missing_ops_trend);
    fmt::print("{} criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
