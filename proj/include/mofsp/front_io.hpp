#pragma once

#include "mofsp/pareto_front.hpp"

#include <string>
#include <string_view>

namespace mofsp {

inline constexpr std::string_view kFrontCsvHeader = "makespan,wtct,tardiness,permutation";

/// One row per point: the three objectives then the permutation as
/// dash-separated job indices. LF line endings.
std::string front_to_csv(const ParetoFront& front);

/// Parses front CSV text; rows are dominance-filtered on the way in.
/// Throws ParseError with the offending line and column.
ParetoFront front_from_csv(std::string_view text);

ParetoFront read_front_file(const std::string& path);
void write_front_file(const ParetoFront& front, const std::string& path);

std::string format_permutation(const Permutation& p);

}  // namespace mofsp
