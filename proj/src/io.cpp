#include "distl0/io.hpp"

#include "distl0/errors.hpp"
#include "distl0/rng.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace distl0 {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  while (*begin == ' ' || *begin == '\t') ++begin;
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw Error(ErrorKind::InvalidParams, "not a number: '" + text + "'");
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  if (*end != '\0') throw Error(ErrorKind::InvalidParams, "not a number: '" + text + "'");
  if (errno == ERANGE && std::abs(v) > 1.0) {
    throw Error(ErrorKind::InvalidParams, "out of range: '" + text + "'");
  }
  return v;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "rename to " + path.string() + " failed: " + ec.message());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  auto flush = [&] {
    const auto first = token.find_first_not_of(" \t\r");
    if (first != std::string::npos) out.push_back(parse_double(token.substr(first)));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '\n') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return out;
}

DatasetMeta make_meta(const Dataset& data, const GroundTruth& truth) {
  DatasetMeta meta;
  meta.p = data.features();
  meta.n = data.rows();
  meta.k = truth.support.size();
  meta.sigma = truth.sigma;
  meta.rho = truth.rho;
  meta.seed = truth.seed;
  meta.rng_name = std::string(Rng::kName);
  meta.w_star = truth.w_star;
  meta.support = truth.support;
  return meta;
}

namespace {

// Doubles go through nlohmann's shortest round-trip printer, so reading the
// file back is value-exact.
nlohmann::ordered_json meta_to_json(const DatasetMeta& meta) {
  nlohmann::ordered_json j;
  j["p"] = meta.p;
  j["n"] = meta.n;
  j["k"] = meta.k;
  j["sigma"] = meta.sigma;
  j["rho"] = meta.rho;
  j["seed"] = meta.seed;
  j["rng_name"] = meta.rng_name;
  auto w = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < meta.w_star.size(); ++i) w.push_back(meta.w_star(i));
  j["w_star"] = std::move(w);
  j["support"] = meta.support;
  return j;
}

DatasetMeta meta_from_json(const nlohmann::ordered_json& j) {
  DatasetMeta meta;
  meta.p = j.at("p").get<std::size_t>();
  meta.n = j.at("n").get<std::size_t>();
  meta.k = j.at("k").get<std::size_t>();
  meta.sigma = j.at("sigma").get<double>();
  meta.rho = j.at("rho").get<double>();
  meta.seed = j.at("seed").get<std::uint64_t>();
  meta.rng_name = j.at("rng_name").get<std::string>();
  const auto& w = j.at("w_star");
  meta.w_star.resize(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) meta.w_star(static_cast<Eigen::Index>(i)) = w[i].get<double>();
  meta.support = j.at("support").get<std::vector<std::size_t>>();
  return meta;
}

}  // namespace

void write_dataset(const fs::path& dir, const Dataset& data, const DatasetMeta& meta) {
  fs::create_directories(dir);
  std::string xs;
  for (Eigen::Index r = 0; r < data.x.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.x.cols(); ++c) {
      if (c > 0) xs.push_back(',');
      xs += format_double(data.x(r, c));
    }
    xs.push_back('\n');
  }
  std::string ys;
  for (Eigen::Index r = 0; r < data.y.size(); ++r) {
    ys += format_double(data.y(r));
    ys.push_back('\n');
  }
  write_file_atomic(dir / "X.csv", xs);
  write_file_atomic(dir / "y.csv", ys);
  write_file_atomic(dir / "meta.json", meta_to_json(meta).dump(2) + "\n");
}

LoadedDataset read_dataset(const fs::path& dir) {
  LoadedDataset out;
  std::vector<std::vector<double>> rows;
  {
    std::istringstream in(read_file(dir / "X.csv"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      rows.push_back(parse_double_list(line));
    }
  }
  const std::vector<double> ys = parse_double_list(read_file(dir / "y.csv"));
  if (rows.empty()) throw Error(ErrorKind::InvalidParams, "X.csv in " + dir.string() + " is empty");
  const std::size_t p = rows.front().size();
  if (ys.size() != rows.size()) {
    throw Error(ErrorKind::ShapeMismatch, "X.csv has " + std::to_string(rows.size()) +
                                              " rows but y.csv has " + std::to_string(ys.size()));
  }
  out.data.x.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
  out.data.y.resize(static_cast<Eigen::Index>(ys.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != p) {
      throw Error(ErrorKind::ShapeMismatch, "ragged X.csv at row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < p; ++c) {
      out.data.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    out.data.y(static_cast<Eigen::Index>(r)) = ys[r];
  }

  if (fs::exists(dir / "meta.json")) {
    try {
      out.meta = meta_from_json(nlohmann::ordered_json::parse(read_file(dir / "meta.json")));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Io, "bad meta.json: " + std::string(e.what()));
    }
    if (out.meta->p != p || out.meta->n != rows.size()) {
      throw Error(ErrorKind::ShapeMismatch, "meta.json disagrees with X.csv dimensions");
    }
  }
  return out;
}

}  // namespace distl0
