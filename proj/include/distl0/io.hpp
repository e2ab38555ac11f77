#pragma once

#include "distl0/datagen.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace distl0 {

/// %.17g: parsing the text back recovers the identical double.
std::string format_double(double v);

/// Parse a double, throwing InvalidParams on trailing garbage or empty text.
double parse_double(const std::string& text);

/// Write to a sibling temp file, then rename over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Contents of meta.json next to X.csv / y.csv.
struct DatasetMeta {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double sigma = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::string rng_name;
  Vector w_star;
  std::vector<std::size_t> support;
};

DatasetMeta make_meta(const Dataset& data, const GroundTruth& truth);

/// Directory layout: X.csv (n rows of p comma-separated values, no header),
/// y.csv (one value per line), meta.json. Creates the directory if needed.
void write_dataset(const std::filesystem::path& dir, const Dataset& data, const DatasetMeta& meta);

struct LoadedDataset {
  Dataset data;
  std::optional<DatasetMeta> meta;  // absent when meta.json is missing
};

LoadedDataset read_dataset(const std::filesystem::path& dir);

/// Comma- or newline-separated list of doubles.
std::vector<double> parse_double_list(const std::string& text);

}  // namespace distl0
