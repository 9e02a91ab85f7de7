#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccnr/matrix_io.hpp"
#include "ccnr/states.hpp"

using namespace ccnr;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_matrix_json(text, "input.json");
  } catch (const MatrixFileError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("round trip is exact") {
  const auto s = random_mixed(2, 3, 4, 99);
  std::ostringstream out;
  write_matrix_json(out, {2, 3, s.matrix()});
  const MatrixFile back = parse_matrix_json(out.str());
  CHECK(back.m == 2);
  CHECK(back.n == 3);
  CHECK(back.matrix == s.matrix());
}

TEST_CASE("files on disk") {
  const auto path = std::filesystem::temp_directory_path() / "ccnr_io_test.json";
  write_matrix_file(path, {2, 2, max_mixed(2).matrix()});
  const auto s = load_state(path);
  CHECK(s.matrix() == max_mixed(2).matrix());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_matrix_file(path), MatrixFileError);
}

TEST_CASE("schema errors") {
  CHECK(error_of("{\"m\": 1, \"n\": 1, \"re\": [[1]], ").find("line") != std::string::npos);
  CHECK(error_of("[1, 2]").find("object") != std::string::npos);
  CHECK(error_of("{\"n\": 1, \"re\": [[1]], \"im\": [[0]]}").find("\"m\"") != std::string::npos);
  CHECK(error_of("{\"m\": 0, \"n\": 1, \"re\": [[1]], \"im\": [[0]]}").find("positive") !=
        std::string::npos);
  CHECK(error_of("{\"m\": 1, \"n\": 2, \"re\": [[1]], \"im\": [[0]]}").find("2 rows") !=
        std::string::npos);
  CHECK(error_of("{\"m\": 1, \"n\": 1, \"re\": [[\"x\"]], \"im\": [[0]]}").find("not a number") !=
        std::string::npos);
  CHECK(error_of("{\"m\": 1, \"n\": 1, \"re\": [[1]], \"im\": [[0]]}").empty());
}

TEST_CASE("invalid states are reported by violation") {
  const auto path = std::filesystem::temp_directory_path() / "ccnr_io_bad.json";
  std::ofstream(path) << R"({"m": 1, "n": 2, "re": [[1, 0], [0, -1]], "im": [[0, 0], [0, 0]]})";
  try {
    load_state(path);
    FAIL("accepted a non-positive matrix");
  } catch (const ValidationError& e) {
    CHECK(e.violation() == Violation::NotPositive);
  }
  std::filesystem::remove(path);
}
