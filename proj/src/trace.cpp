#include "distl0/trace.hpp"

#include "distl0/errors.hpp"
#include "distl0/io.hpp"

#include <algorithm>
#include <sstream>

namespace distl0 {

std::string format_trace(std::span<const IterationRecord> trace, std::span<const std::string> comments) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  out += kTraceHeader;
  out += '\n';
  for (const IterationRecord& r : trace) {
    out += std::to_string(r.t);
    for (double v : {r.alpha, r.consensus_error, r.dual_value, r.mean_local_error, r.wall_time.count()}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

void write_trace(const std::filesystem::path& path, std::span<const IterationRecord> trace,
                 std::span<const std::string> comments) {
  write_file_atomic(path, format_trace(trace, comments));
}

std::vector<double> TraceTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error(ErrorKind::InvalidParams, "no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[c]);
  return out;
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TraceTable parse_trace(const std::string& text) {
  TraceTable table;
  std::stringstream ss(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    if (table.columns.empty()) {
      table.columns = split_commas(line);
      continue;
    }
    const std::vector<std::string> cells = split_commas(line);
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorKind::InvalidParams, "line " + std::to_string(line_no) + " has " +
                                                std::to_string(cells.size()) + " fields, expected " +
                                                std::to_string(table.columns.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& cell : cells) row.push_back(parse_double(cell));
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw Error(ErrorKind::InvalidParams, "trace has no header");
  if (table.rows.empty()) throw Error(ErrorKind::InvalidParams, "trace has no data rows");
  return table;
}

TraceTable read_trace(const std::filesystem::path& path) { return parse_trace(read_file(path)); }

}  // namespace distl0
