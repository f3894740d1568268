#include "mofsp/instance.hpp"

#include "mofsp/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

namespace mofsp {

std::int64_t Instance::total_work(int job) const {
    const auto r = row(job);
    return std::accumulate(r.begin(), r.end(), std::int64_t{0});
}

void Instance::validate() const {
    if (n_jobs < 1 || n_machines < 1)
        throw std::invalid_argument("instance needs at least one job and one machine");
    const auto cells = static_cast<std::size_t>(n_jobs) * static_cast<std::size_t>(n_machines);
    if (processing_times.size() != cells)
        throw std::invalid_argument("processing time matrix does not match n_jobs x n_machines");
    if (due_dates.size() != static_cast<std::size_t>(n_jobs) ||
        weights.size() != static_cast<std::size_t>(n_jobs))
        throw std::invalid_argument("due dates and weights need one entry per job");
    for (int v : processing_times)
        if (v < 0 || v > kMaxProcessingTime)
            throw std::invalid_argument(fmt::format("processing time {} outside [0, {}]", v, kMaxProcessingTime));
    if (std::all_of(processing_times.begin(), processing_times.end(), [](int v) { return v == 0; }))
        throw std::invalid_argument("degenerate instance: every processing time is zero");
    for (auto d : due_dates)
        if (d < 0) throw std::invalid_argument("due dates must be non-negative");
    for (auto w : weights)
        if (w < 1) throw std::invalid_argument("weights must be at least 1");
    if (!(missing_percent >= 0.0 && missing_percent <= 100.0))
        throw std::invalid_argument("missing percentage outside [0, 100]");
}

void GeneratorConfig::validate() const {
    if (n_jobs < 1 || n_machines < 1)
        throw std::invalid_argument("generator needs n_jobs >= 1 and n_machines >= 1");
    if (!(missing_prob >= 0.0 && missing_prob <= 1.0))
        throw std::invalid_argument("missing_prob must lie in [0, 1]");
    if (missing_prob >= 1.0)
        throw std::invalid_argument("missing_prob = 1 cannot produce a non-degenerate instance");
    if (!(due_date_tightness.lo >= 0.0 && due_date_tightness.lo <= due_date_tightness.hi))
        throw std::invalid_argument("due date tightness needs 0 <= lo <= hi");
    if (weight_range.lo < 1 || weight_range.lo > weight_range.hi)
        throw std::invalid_argument("weight range needs 1 <= lo <= hi");
}

std::string instance_name(int n_jobs, int n_machines, double missing_prob) {
    return fmt::format("{}Jx{}M-{}%", n_jobs, n_machines, std::llround(100.0 * missing_prob));
}

Instance generate_instance(const GeneratorConfig& cfg) {
    cfg.validate();

    Instance inst;
    inst.name = instance_name(cfg.n_jobs, cfg.n_machines, cfg.missing_prob);
    inst.n_jobs = cfg.n_jobs;
    inst.n_machines = cfg.n_machines;
    inst.missing_percent = std::round(cfg.missing_prob * 100.0 * 1e6) / 1e6;

    const auto cells = static_cast<std::size_t>(cfg.n_jobs) * static_cast<std::size_t>(cfg.n_machines);
    inst.processing_times.assign(cells, 0);
    auto matrix_rng = RandomStream::derive(cfg.seed, StreamTag::processing_times);
    bool degenerate = true;
    while (degenerate) {
        for (auto& v : inst.processing_times) {
            const bool missing = matrix_rng.bernoulli(cfg.missing_prob);
            const auto value = static_cast<int>(matrix_rng.uniform_int(1, kMaxProcessingTime));
            v = missing ? 0 : value;
            if (!missing) degenerate = false;
        }
    }

    auto due_rng = RandomStream::derive(cfg.seed, StreamTag::due_dates);
    inst.due_dates.resize(cfg.n_jobs);
    for (int j = 0; j < cfg.n_jobs; ++j) {
        const double u = due_rng.uniform_real(cfg.due_date_tightness.lo, cfg.due_date_tightness.hi);
        inst.due_dates[j] = std::llround(u * static_cast<double>(inst.total_work(j)));
    }

    auto weight_rng = RandomStream::derive(cfg.seed, StreamTag::weights);
    inst.weights.resize(cfg.n_jobs);
    for (auto& w : inst.weights) w = weight_rng.uniform_int(cfg.weight_range.lo, cfg.weight_range.hi);

    return inst;
}

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error(fmt::format("line {}, column {}: {}", line, column, what)), line_(line), column_(column) {}

std::string serialize_instance(const Instance& inst) {
    std::string out = inst.name;
    out += '\n';
    out += fmt::format("{} {} {}\n", inst.n_jobs, inst.n_machines, inst.missing_percent);
    for (int j = 0; j < inst.n_jobs; ++j) out += fmt::format("{}\n", fmt::join(inst.row(j), " "));
    out += fmt::format("{}\n", fmt::join(inst.due_dates, " "));
    out += fmt::format("{}\n", fmt::join(inst.weights, " "));
    return out;
}

namespace {

struct Token {
    std::string_view text;
    int column;
};

struct Line {
    std::string_view text;
    int number;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return tokens;
}

class InstanceParser {
public:
    explicit InstanceParser(std::string_view text) {
        int number = 1;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            auto line = text.substr(pos, end - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines_.push_back({line, number++});
            pos = end + 1;
        }
        // trailing blank lines are not content
        while (!lines_.empty() && tokenize(lines_.back().text).empty()) lines_.pop_back();
    }

    Instance parse() {
        Instance inst;
        const Line& name_line = next("instance name");
        inst.name = std::string(trim(name_line.text));
        if (inst.name.empty()) throw ParseError(name_line.number, 1, "empty instance name");

        const Line& header = next("header 'n m p_percent'");
        const auto head = tokenize(header.text);
        if (head.size() != 3)
            throw ParseError(header.number, 1,
                             fmt::format("header expects 3 fields 'n m p_percent', found {}", head.size()));
        inst.n_jobs = static_cast<int>(integer(head[0], header.number, 1, 1'000'000));
        inst.n_machines = static_cast<int>(integer(head[1], header.number, 1, 1'000'000));
        inst.missing_percent = real(head[2], header.number, 0.0, 100.0);

        inst.processing_times.reserve(static_cast<std::size_t>(inst.n_jobs) * inst.n_machines);
        for (int j = 0; j < inst.n_jobs; ++j) {
            const Line& line = next(fmt::format("processing times of job {}", j));
            for (auto v : row(line, inst.n_machines, 0, kMaxProcessingTime, "processing time row"))
                inst.processing_times.push_back(static_cast<int>(v));
        }
        inst.due_dates = row(next("due dates"), inst.n_jobs, 0, std::int64_t{1} << 53, "due date line");
        inst.weights = row(next("weights"), inst.n_jobs, 1, std::int64_t{1} << 31, "weight line");

        if (cursor_ < lines_.size())
            throw ParseError(lines_[cursor_].number, 1,
                             fmt::format("dimension mismatch: unexpected extra line after {} declared jobs",
                                         inst.n_jobs));
        if (std::all_of(inst.processing_times.begin(), inst.processing_times.end(), [](int v) { return v == 0; }))
            throw ParseError(name_line.number, 1, "degenerate instance: every processing time is zero");
        return inst;
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    }

    const Line& next(const std::string& what) {
        if (cursor_ >= lines_.size()) {
            const int line = lines_.empty() ? 1 : lines_.back().number + 1;
            throw ParseError(line, 1, fmt::format("dimension mismatch: missing {}", what));
        }
        return lines_[cursor_++];
    }

    static std::int64_t integer(const Token& tok, int line, std::int64_t lo, std::int64_t hi) {
        std::int64_t value = 0;
        const auto* first = tok.text.data();
        const auto* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last)
            throw ParseError(line, tok.column, fmt::format("expected an integer, found '{}'", tok.text));
        if (value < lo || value > hi)
            throw ParseError(line, tok.column, fmt::format("value {} out of range [{}, {}]", value, lo, hi));
        return value;
    }

    static double real(const Token& tok, int line, double lo, double hi) {
        double value = 0.0;
        const auto* first = tok.text.data();
        const auto* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last)
            throw ParseError(line, tok.column, fmt::format("expected a number, found '{}'", tok.text));
        if (!(value >= lo && value <= hi))
            throw ParseError(line, tok.column, fmt::format("value {} out of range [{}, {}]", value, lo, hi));
        return value;
    }

    static std::vector<std::int64_t> row(const Line& line, int expected, std::int64_t lo, std::int64_t hi,
                                         std::string_view what) {
        const auto tokens = tokenize(line.text);
        if (tokens.size() != static_cast<std::size_t>(expected))
            throw ParseError(line.number, tokens.empty() ? 1 : tokens.back().column,
                             fmt::format("dimension mismatch: {} has {} values, expected {}", what, tokens.size(),
                                         expected));
        std::vector<std::int64_t> values;
        values.reserve(tokens.size());
        for (const auto& tok : tokens) values.push_back(integer(tok, line.number, lo, hi));
        return values;
    }

    std::vector<Line> lines_;
    std::size_t cursor_ = 0;
};

}  // namespace

Instance parse_instance(std::string_view text) { return InstanceParser(text).parse(); }

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot open instance file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void write_instance_file(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write instance file '{}'", path));
    out << serialize_instance(inst);
}

}  // namespace mofsp
