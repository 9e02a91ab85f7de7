#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ccnr/bipartite.hpp"

namespace ccnr {

// Malformed matrix file: unreadable, bad JSON, or wrong schema.
class MatrixFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON matrix file:
//   {"m": 2, "n": 2,
//    "re": [[...], ...],   // (m n) x (m n) real parts
//    "im": [[...], ...]}   // (m n) x (m n) imaginary parts
struct MatrixFile {
  std::size_t m = 0;
  std::size_t n = 0;
  ComplexMatrix matrix;
};

MatrixFile parse_matrix_json(const std::string& text, const std::string& source = "<string>");
MatrixFile read_matrix_file(const std::filesystem::path& path);

// Writes with 17 significant digits so values round-trip exactly.
void write_matrix_json(std::ostream& out, const MatrixFile& file);
void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file);

// Parses then validates; ValidationError propagates unchanged.
BipartiteState load_state(const std::filesystem::path& path, ValidateOptions options = {});

}  // namespace ccnr
