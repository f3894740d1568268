#include <doctest.h>

#include "mofsp/instance.hpp"

#include <cmath>
#include <string>

using namespace mofsp;

namespace {

GeneratorConfig config(int n, int m, double p, std::uint64_t seed = 7) {
    GeneratorConfig cfg;
    cfg.n_jobs = n;
    cfg.n_machines = m;
    cfg.missing_prob = p;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("instance names follow the n x m - p% convention") {
    CHECK(instance_name(30, 10, 0.0) == "30Jx10M-0%");
    CHECK(instance_name(50, 20, 0.2) == "50Jx20M-20%");
    CHECK(instance_name(1, 1, 0.0) == "1Jx1M-0%");
    CHECK(generate_instance(config(30, 10, 0.10)).name == "30Jx10M-10%");
}

TEST_CASE("zero missing probability never yields a missing operation") {
    const auto inst = generate_instance(config(40, 20, 0.0));
    for (int v : inst.processing_times) {
        CHECK(v >= 1);
        CHECK(v <= 100);
    }
}

TEST_CASE("zero-entry frequency tracks the missing probability") {
    std::size_t zeros = 0;
    std::size_t total = 0;
    for (std::uint64_t seed = 0; total < 10'000; ++seed) {
        const auto inst = generate_instance(config(50, 20, 0.20, seed));
        for (int v : inst.processing_times) zeros += v == 0 ? 1 : 0;
        total += inst.processing_times.size();
    }
    const double freq = static_cast<double>(zeros) / static_cast<double>(total);
    CHECK(std::abs(freq - 0.20) <= 0.02);
}

TEST_CASE("generation is a pure function of the configuration") {
    const auto cfg = config(30, 10, 0.1, 99);
    CHECK(generate_instance(cfg) == generate_instance(cfg));
    auto other = cfg;
    other.seed = 100;
    CHECK(generate_instance(cfg).processing_times != generate_instance(other).processing_times);
}

TEST_CASE("instances sharing a seed are coupled across missing probabilities") {
    const auto low = generate_instance(config(30, 20, 0.1, 5));
    const auto high = generate_instance(config(30, 20, 0.2, 5));
    for (std::size_t k = 0; k < low.processing_times.size(); ++k) {
        if (high.processing_times[k] != 0) CHECK(high.processing_times[k] == low.processing_times[k]);
        if (low.processing_times[k] == 0) CHECK(high.processing_times[k] == 0);
    }
}

TEST_CASE("due dates and weights respect their ranges") {
    auto cfg = config(50, 20, 0.2, 3);
    cfg.due_date_tightness = {1.0, 2.0};
    cfg.weight_range = {1, 10};
    const auto inst = generate_instance(cfg);
    for (int j = 0; j < inst.n_jobs; ++j) {
        const auto work = static_cast<double>(inst.total_work(j));
        CHECK(static_cast<double>(inst.due_dates[j]) >= work * 1.0 - 1.0);
        CHECK(static_cast<double>(inst.due_dates[j]) <= work * 2.0 + 1.0);
        CHECK(inst.weights[j] >= 1);
        CHECK(inst.weights[j] <= 10);
    }
    CHECK_NOTHROW(inst.validate());
}

TEST_CASE("generator rejects invalid configurations") {
    CHECK_THROWS_AS(generate_instance(config(5, 5, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(config(0, 5, 0.1)), std::invalid_argument);
    auto cfg = config(5, 5, 0.1);
    cfg.due_date_tightness = {2.0, 1.0};
    CHECK_THROWS_AS(generate_instance(cfg), std::invalid_argument);
    cfg = config(5, 5, 0.1);
    cfg.weight_range = {0, 3};
    CHECK_THROWS_AS(generate_instance(cfg), std::invalid_argument);
}

TEST_CASE("a near-certain missing probability still produces a non-degenerate instance") {
    const auto inst = generate_instance(config(1, 1, 0.999, 11));
    CHECK(inst.processing_times[0] > 0);
}

TEST_CASE("serialization round-trips generated instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate_instance(config(1 + static_cast<int>(seed % 7), 1 + static_cast<int>(seed % 4),
                                                   0.05 * static_cast<double>(seed % 5), seed));
        CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
}

TEST_CASE("serialized layout") {
    Instance inst;
    inst.name = "2Jx2M-0%";
    inst.n_jobs = 2;
    inst.n_machines = 2;
    inst.processing_times = {3, 2, 1, 4};
    inst.due_dates = {10, 10};
    inst.weights = {1, 2};
    CHECK(serialize_instance(inst) == "2Jx2M-0%\n2 2 0\n3 2\n1 4\n10 10\n1 2\n");
}

TEST_CASE("parse errors carry line and column") {
    SUBCASE("three processing rows for two declared jobs") {
        const std::string text = "x\n2 3 0\n1 2 3\n4 5 6\n7 8 9\n10 10\n1 1\n";
        try {
            parse_instance(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("dimension mismatch") != std::string::npos);
            CHECK(e.line() == 5);
        }
    }
    SUBCASE("square instance with an extra row surfaces as trailing content") {
        const std::string text = "x\n2 2 0\n1 2\n3 4\n5 6\n10 10\n1 1\n";
        CHECK_THROWS_WITH_AS(parse_instance(text), doctest::Contains("dimension mismatch"), ParseError);
    }
    SUBCASE("processing time above 100") {
        const std::string text = "x\n1 2 0\n5 101\n10\n1\n";
        try {
            parse_instance(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("out of range") != std::string::npos);
            CHECK(e.line() == 3);
            CHECK(e.column() == 3);
        }
    }
    SUBCASE("non-integer token") {
        const std::string text = "x\n1 2 0\n5 4.5\n10\n1\n";
        try {
            parse_instance(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("integer") != std::string::npos);
            CHECK(e.line() == 3);
            CHECK(e.column() == 3);
        }
    }
    SUBCASE("missing weight line") {
        CHECK_THROWS_AS(parse_instance("x\n1 1 0\n5\n10\n"), ParseError);
    }
    SUBCASE("zero weight") {
        CHECK_THROWS_WITH_AS(parse_instance("x\n1 1 0\n5\n10\n0\n"), doctest::Contains("out of range"), ParseError);
    }
    SUBCASE("all-zero matrix") {
        CHECK_THROWS_WITH_AS(parse_instance("x\n1 2 0\n0 0\n10\n1\n"), doctest::Contains("degenerate"), ParseError);
    }
}
