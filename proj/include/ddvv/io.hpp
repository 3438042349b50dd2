// Matrix file format:
//   { "n": int, "kind_default": "symmetric",
//     "matrices": [ { "kind": "symmetric"|"skew"|"general", "data": [[row],...] } ],
//     "c": real (optional), "h": [[[...]]] (optional, selects fundamental-form mode) }
// Structured kinds keep the upper triangle and mirror it into the lower one.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ddvv/curvature.hpp"
#include "ddvv/inequal.hpp"
#include "ddvv/matcore.hpp"

namespace ddvv {

/// Malformed input; the message carries a line/column or a JSON path.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatrixFile {
  std::optional<MatTuple> tuple;
  std::optional<FundForm> form;
  double c = 1.0;
  bool has_c = false;
};

MatrixFile parse_matrix_file(std::string_view text);
MatrixFile load_matrix_file(const std::string& path);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_text_file(const std::string& path);

nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json tuple_to_json(const MatTuple& t);
nlohmann::json form_to_json(const FundForm& f);
/// Frames are not square; written with "rows"/"cols" in place of "n".
nlohmann::json frame_to_json(const Frame4& f);

}  // namespace ddvv
