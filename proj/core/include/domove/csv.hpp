#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "domove/geometry.hpp"

namespace domove {

// Reads a point set from a CSV file: one point per row, comma-separated
// decimal coordinates, optional header row (any row whose cells are not all
// numeric). Blank lines are ignored. The set label is the file stem.
//
// Malformed input raises std::runtime_error naming the file and the
// offending physical line, e.g. "points.csv: row 4: invalid number 'x'".
PointSet read_pointset_csv(const std::filesystem::path& path);

// Same grammar, from an in-memory buffer; errors carry only the row number.
PointSet parse_pointset_csv(std::string_view text, std::string label);

// Serializes with a `f1,...,fM` header and shortest round-trip decimals, so
// parse(write(set)) reproduces the coordinates exactly.
std::string pointset_to_csv(const PointSet& set);
void write_pointset_csv(std::ostream& os, const PointSet& set);

}  // namespace domove
