#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lyalasso/simulate.hpp"
#include "lyalasso/types.hpp"

namespace lyalasso {

inline constexpr const char* kLibraryVersion = "0.1.0";

// Malformed or unreadable input files (distinct from NumericalError so the
// command line can map them to the usage exit code).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV throughout: ',' separator, '.' decimal point, one header row, UTF-8.
struct CsvData {
  std::vector<std::string> columns;
  Matrix values;  // rows x columns.size()
};

CsvData read_csv(const std::string& path);

void write_csv(const std::string& path,
               const std::vector<std::string>& columns, const Matrix& values);

// Square matrix from CSV; header names are ignored, shape is checked.
Matrix read_square_matrix_csv(const std::string& path);

struct IngestResult {
  Dataset data;
  std::vector<std::string> names;  // column names, preserved for edge lists
};

// Dataset from CSV.  With standardize, each column is shifted to mean zero
// and scaled to sample standard deviation one (the n-1 convention, recorded
// in output metadata).  Ragged rows, non-numeric cells, header-only files,
// and constant columns under standardization raise IoError naming the row
// and column.
IngestResult ingest_csv(const std::string& path, bool standardize);

// One line per off-diagonal nonzero: "NAME_i -> NAME_j\tweight" for the
// graph edge i -> j, i.e. entry (j, i) of the matrix.
void write_edge_list(const std::string& path, const Matrix& m,
                     const std::vector<std::string>& names,
                     double threshold = 0.0);

// Default column names var_1, ..., var_p.
std::vector<std::string> default_names(int p);

// Writes a JSON metadata object (pretty-printed, two-space indent).  Every
// command directs one of these next to its outputs so a run can be repeated
// bit-identically; keys are caller-defined plus "version" and
// "rng_algorithm" added here.
void write_metadata(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>&
                        entries);

}  // namespace lyalasso
