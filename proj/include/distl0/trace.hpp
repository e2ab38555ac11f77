#pragma once

// Per-round trace files: optional `#` comment lines, then
//   t,alpha,consensus_error,dual_value,mean_local_error,wall_ms
// with every float printed at 17 significant digits.

#include "distl0/consensus.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace distl0 {

inline constexpr const char* kTraceHeader = "t,alpha,consensus_error,dual_value,mean_local_error,wall_ms";

std::string format_trace(std::span<const IterationRecord> trace, std::span<const std::string> comments = {});

void write_trace(const std::filesystem::path& path, std::span<const IterationRecord> trace,
                 std::span<const std::string> comments = {});

/// Numeric CSV with a header row; comment lines are kept aside.
struct TraceTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws InvalidParams for an unknown column.
  std::vector<double> column(const std::string& name) const;
};

/// Throws InvalidParams when the text has no header or no data rows, or a
/// row has the wrong width.
TraceTable parse_trace(const std::string& text);
TraceTable read_trace(const std::filesystem::path& path);

}  // namespace distl0
