#include "mofsp/front_io.hpp"

#include "mofsp/instance.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace mofsp {

std::string format_permutation(const Permutation& p) { return fmt::format("{}", fmt::join(p.values(), "-")); }

std::string front_to_csv(const ParetoFront& front) {
    std::string out(kFrontCsvHeader);
    out += '\n';
    for (const auto& p : front)
        out += fmt::format("{},{},{},{}\n", p.objectives[0], p.objectives[1], p.objectives[2],
                           format_permutation(p.permutation));
    return out;
}

namespace {

std::int64_t parse_int(std::string_view tok, int line, int column) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty())
        throw ParseError(line, column, fmt::format("expected an integer, found '{}'", tok));
    return v;
}

}  // namespace

ParetoFront front_from_csv(std::string_view text) {
    ParetoFront front;
    int line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kFrontCsvHeader)
                throw ParseError(line_no, 1, fmt::format("expected header '{}'", kFrontCsvHeader));
            header_seen = true;
            continue;
        }

        std::vector<std::pair<std::string_view, int>> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            const auto stop = comma == std::string_view::npos ? line.size() : comma;
            fields.emplace_back(line.substr(start, stop - start), static_cast<int>(start) + 1);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 4)
            throw ParseError(line_no, 1, fmt::format("expected 4 fields, found {}", fields.size()));

        ObjectiveVector v;
        for (std::size_t o = 0; o < kObjectives; ++o) {
            v[o] = parse_int(fields[o].first, line_no, fields[o].second);
            if (v[o] < 0) throw ParseError(line_no, fields[o].second, "objective values must be non-negative");
        }
        std::vector<int> order;
        auto perm_text = fields[3].first;
        std::size_t p0 = 0;
        while (p0 <= perm_text.size()) {
            const auto dash = perm_text.find('-', p0);
            const auto stop = dash == std::string_view::npos ? perm_text.size() : dash;
            order.push_back(static_cast<int>(
                parse_int(perm_text.substr(p0, stop - p0), line_no, fields[3].second + static_cast<int>(p0))));
            if (dash == std::string_view::npos) break;
            p0 = dash + 1;
        }
        Permutation perm(std::move(order));
        if (!perm.is_valid()) throw ParseError(line_no, fields[3].second, "permutation is not a bijection");
        front.insert(v, perm);
    }
    if (!header_seen) throw ParseError(1, 1, fmt::format("expected header '{}'", kFrontCsvHeader));
    return front;
}

ParetoFront read_front_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot open front file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return front_from_csv(buf.str());
}

void write_front_file(const ParetoFront& front, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write front file '{}'", path));
    out << front_to_csv(front);
}

}  // namespace mofsp
