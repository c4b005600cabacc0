#include "lyalasso/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lyalasso/rng.hpp"

namespace lyalasso {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

double parse_cell(const std::string& cell, const std::string& path, int row,
                  const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    std::ostringstream msg;
    msg << path << ": row " << row << ", column '" << column
        << "': cannot parse '" << cell << "' as a number";
    throw IoError(msg.str());
  }
  return value;
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace

CsvData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open file");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw IoError(path + ": empty file");

  CsvData csv;
  csv.columns = split_fields(lines[0]);
  const int cols = static_cast<int>(csv.columns.size());
  const int rows = static_cast<int>(lines.size()) - 1;
  if (rows == 0) throw IoError(path + ": no data rows");

  csv.values.resize(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const std::vector<std::string> fields = split_fields(lines[r + 1]);
    if (static_cast<int>(fields.size()) != cols) {
      std::ostringstream msg;
      msg << path << ": row " << r + 1 << " has " << fields.size()
          << " cells, expected " << cols;
      throw IoError(msg.str());
    }
    for (int c = 0; c < cols; ++c)
      csv.values(r, c) = parse_cell(fields[c], path, r + 1, csv.columns[c]);
  }
  return csv;
}

void write_csv(const std::string& path,
               const std::vector<std::string>& columns, const Matrix& values) {
  if (values.cols() != static_cast<Eigen::Index>(columns.size()))
    throw std::invalid_argument("write_csv: header width mismatch");
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open file for writing");
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out << ',';
    out << columns[c];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(values(r, c));
    }
    out << '\n';
  }
  if (!out) throw IoError(path + ": write failed");
}

Matrix read_square_matrix_csv(const std::string& path) {
  const CsvData csv = read_csv(path);
  if (csv.values.rows() != csv.values.cols()) {
    std::ostringstream msg;
    msg << path << ": expected a square matrix, got " << csv.values.rows()
        << "x" << csv.values.cols();
    throw IoError(msg.str());
  }
  return csv.values;
}

IngestResult ingest_csv(const std::string& path, bool standardize) {
  const CsvData csv = read_csv(path);
  IngestResult result;
  result.names = csv.columns;
  result.data.n = static_cast<int>(csv.values.rows());
  result.data.p = static_cast<int>(csv.values.cols());
  result.data.rows = csv.values;

  if (standardize) {
    if (result.data.n < 2)
      throw IoError(path + ": cannot standardize a single data row");
    for (int c = 0; c < result.data.p; ++c) {
      auto column = result.data.rows.col(c);
      const double mean = column.mean();
      const double sq = (column.array() - mean).square().sum();
      const double sd = std::sqrt(sq / (result.data.n - 1));
      if (sd == 0.0)
        throw IoError(path + ": constant column '" + result.names[c] +
                      "' cannot be standardized");
      column = (column.array() - mean) / sd;
    }
  }
  return result;
}

void write_edge_list(const std::string& path, const Matrix& m,
                     const std::vector<std::string>& names,
                     double threshold) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("write_edge_list: matrix must be square");
  if (m.rows() != static_cast<Eigen::Index>(names.size()))
    throw std::invalid_argument("write_edge_list: one name per node required");
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open file for writing");
  const int p = static_cast<int>(m.rows());
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      if (std::abs(m(j, i)) > threshold)
        out << names[i] << " -> " << names[j] << '\t' << format_double(m(j, i))
            << '\n';
    }
  if (!out) throw IoError(path + ": write failed");
}

std::vector<std::string> default_names(int p) {
  std::vector<std::string> names;
  names.reserve(p);
  for (int i = 1; i <= p; ++i) names.push_back("var_" + std::to_string(i));
  return names;
}

void write_metadata(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& entries) {
  nlohmann::ordered_json meta;
  meta["version"] = kLibraryVersion;
  meta["rng_algorithm"] = kRngAlgorithm;
  for (const auto& [key, value] : entries) meta[key] = value;
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open file for writing");
  out << meta.dump(2) << '\n';
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace lyalasso
