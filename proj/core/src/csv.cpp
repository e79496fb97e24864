#include "domove/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "num_format.hpp"

namespace domove {

namespace {

[[noreturn]] void fail(int row, const std::string& msg) {
  throw std::runtime_error("row " + std::to_string(row) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  const std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t cut = line.find(',', pos);
    cells.push_back(trim(line.substr(
        pos, cut == std::string_view::npos ? line.size() - pos : cut - pos)));
    if (cut == std::string_view::npos) break;
    pos = cut + 1;
  }
  return cells;
}

bool try_number(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (*first == '+') ++first;  // from_chars rejects a leading plus
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && p == last;
}

}  // namespace

PointSet parse_pointset_csv(std::string_view text, std::string label) {
  std::vector<Point> points;
  std::size_t dim = 0;
  bool header_allowed = true;
  int row = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++row;
    const bool last_chunk = eol == std::string_view::npos;
    pos = last_chunk ? text.size() + 1 : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      if (last_chunk) break;
      continue;
    }

    const std::vector<std::string_view> cells = split_cells(line);
    std::vector<double> values(cells.size());
    bool numeric = true;
    std::size_t bad = 0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!try_number(cells[k], values[k])) {
        numeric = false;
        bad = k;
        break;
      }
    }
    if (!numeric) {
      if (header_allowed) {
        header_allowed = false;
        if (last_chunk) break;
        continue;
      }
      fail(row, "invalid number '" + std::string(cells[bad]) + "'");
    }
    header_allowed = false;
    for (double v : values) {
      if (!std::isfinite(v)) fail(row, "non-finite value");
    }
    if (points.empty()) {
      dim = values.size();
    } else if (values.size() != dim) {
      fail(row, "expected " + std::to_string(dim) + " columns, got " +
                    std::to_string(values.size()));
    }
    points.push_back(std::move(values));
    if (last_chunk) break;
  }
  if (points.empty()) throw std::runtime_error("empty set");
  return PointSet(std::move(label), dim, std::move(points));
}

PointSet read_pointset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path.string() + ": cannot open file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pointset_csv(buf.str(), path.stem().string());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string pointset_to_csv(const PointSet& set) {
  std::string out;
  for (std::size_t m = 0; m < set.dim(); ++m) {
    if (m) out += ',';
    out += 'f' + std::to_string(m + 1);
  }
  out += '\n';
  for (const Point& p : set.points()) {
    for (std::size_t m = 0; m < set.dim(); ++m) {
      if (m) out += ',';
      out += detail::shortest_double(p[m]);
    }
    out += '\n';
  }
  return out;
}

void write_pointset_csv(std::ostream& os, const PointSet& set) {
  os << pointset_to_csv(set);
}

}  // namespace domove
