#include "ccnr/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace ccnr {

namespace {

using nlohmann::json;

std::size_t read_dimension(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key)) throw MatrixFileError(source + ": missing key \"" + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw MatrixFileError(source + ": \"" + key + "\" must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::vector<double> read_part(const json& doc, const char* key, std::size_t dim,
                              const std::string& source) {
  if (!doc.contains(key)) throw MatrixFileError(source + ": missing key \"" + key + "\"");
  const json& rows = doc.at(key);
  if (!rows.is_array() || rows.size() != dim) {
    throw MatrixFileError(source + ": \"" + key + "\" must be an array of " + std::to_string(dim) +
                          " rows");
  }
  std::vector<double> out;
  out.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim) {
      throw MatrixFileError(source + ": \"" + key + "\" row " + std::to_string(i) + " must have " +
                            std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      if (!row[j].is_number()) {
        throw MatrixFileError(source + ": \"" + key + "\"[" + std::to_string(i) + "][" +
                              std::to_string(j) + "] is not a number");
      }
      out.push_back(row[j].get<double>());
    }
  }
  return out;
}

}  // namespace

MatrixFile parse_matrix_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MatrixFileError(source + ": " + e.what());
  }
  if (!doc.is_object()) throw MatrixFileError(source + ": top level must be an object");

  MatrixFile file;
  file.m = read_dimension(doc, "m", source);
  file.n = read_dimension(doc, "n", source);
  const std::size_t dim = file.m * file.n;
  const auto re = read_part(doc, "re", dim, source);
  const auto im = read_part(doc, "im", dim, source);
  std::vector<Complex> entries(dim * dim);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
  file.matrix = ComplexMatrix(dim, dim, std::move(entries));
  return file;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MatrixFileError(path.string() + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_json(buffer.str(), path.string());
}

void write_matrix_json(std::ostream& out, const MatrixFile& file) {
  const std::size_t dim = file.m * file.n;
  if (file.matrix.rows() != dim || file.matrix.cols() != dim) {
    throw ShapeError("write_matrix_json: matrix " + shape_string(file.matrix) +
                     " does not match (m,n)");
  }
  const auto old_precision = out.precision(17);
  const auto write_part = [&](bool imag) {
    out << "[\n";
    for (std::size_t i = 0; i < dim; ++i) {
      out << "    [";
      for (std::size_t j = 0; j < dim; ++j) {
        const Complex z = file.matrix(i, j);
        out << (j ? ", " : "") << (imag ? z.imag() : z.real());
      }
      out << (i + 1 < dim ? "],\n" : "]\n");
    }
    out << "  ]";
  };
  out << "{\n  \"m\": " << file.m << ",\n  \"n\": " << file.n << ",\n  \"re\": ";
  write_part(false);
  out << ",\n  \"im\": ";
  write_part(true);
  out << "\n}\n";
  out.precision(old_precision);
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file) {
  std::ofstream out(path);
  if (!out) throw MatrixFileError(path.string() + ": cannot open for writing");
  write_matrix_json(out, file);
}

BipartiteState load_state(const std::filesystem::path& path, ValidateOptions options) {
  const MatrixFile file = read_matrix_file(path);
  return validate(file.matrix, file.m, file.n, options);
}

}  // namespace ccnr
