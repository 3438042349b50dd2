#include "ddvv/io.hpp"

#include <fstream>
#include <sstream>

namespace ddvv {

namespace {

using nlohmann::json;

Matrix parse_square(const json& rows, std::size_t n, const std::string& where) {
  if (!rows.is_array() || rows.size() != n) {
    throw InputError(where + ": expected an array of " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    const std::string row_path = where + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != n) {
      throw InputError(row_path + ": expected " + std::to_string(n) + " numbers");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw InputError(row_path + "[" + std::to_string(j) + "]: expected a number");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  if (!m.all_finite()) throw InputError(where + ": non-finite entry");
  return m;
}

MatKind kind_at(const json& obj, const std::string& key, MatKind fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) throw InputError(where + "." + key + ": expected a string");
  try {
    return parse_kind(obj[key].get<std::string>());
  } catch (const PreconditionError& e) {
    throw InputError(where + "." + key + ": " + e.what());
  }
}

}  // namespace

MatrixFile parse_matrix_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(e.what());
  }
  if (!doc.is_object()) throw InputError("document: expected a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw InputError("n: expected a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const MatKind kind_default = kind_at(doc, "kind_default", MatKind::symmetric, "document");

  MatrixFile out;
  if (doc.contains("c")) {
    if (!doc["c"].is_number()) throw InputError("c: expected a number");
    out.c = doc["c"].get<double>();
    out.has_c = true;
  }

  if (doc.contains("matrices")) {
    const json& mats = doc["matrices"];
    if (!mats.is_array() || mats.empty()) throw InputError("matrices: expected a nonempty array");
    std::vector<MatTuple::Item> items;
    for (std::size_t r = 0; r < mats.size(); ++r) {
      const std::string where = "matrices[" + std::to_string(r) + "]";
      if (!mats[r].is_object() || !mats[r].contains("data")) {
        throw InputError(where + ": expected an object with \"data\"");
      }
      const MatKind kind = kind_at(mats[r], "kind", kind_default, where);
      items.push_back({kind, parse_square(mats[r]["data"], n, where + ".data")});
    }
    out.tuple.emplace(std::move(items));
  }

  if (doc.contains("h")) {
    const json& h = doc["h"];
    if (!h.is_array() || h.empty()) throw InputError("h: expected a nonempty array of blocks");
    std::vector<Matrix> blocks;
    for (std::size_t r = 0; r < h.size(); ++r) {
      const std::string where = "h[" + std::to_string(r) + "]";
      blocks.push_back(enforce_kind(parse_square(h[r], n, where), MatKind::symmetric));
    }
    try {
      out.form.emplace(std::move(blocks), out.c);
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("h: ") + e.what());
    }
    if (!out.tuple) out.tuple = to_tuple(*out.form);
  }

  if (!out.tuple) throw InputError("document: needs \"matrices\" or \"h\"");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MatrixFile load_matrix_file(const std::string& path) { return parse_matrix_file(read_text_file(path)); }

nlohmann::json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json tuple_to_json(const MatTuple& t) {
  json doc;
  doc["n"] = t.n();
  doc["kind_default"] = "symmetric";
  json mats = json::array();
  for (const auto& it : t) {
    mats.push_back({{"kind", std::string(to_string(it.kind))}, {"data", matrix_to_json(it.mat)}});
  }
  doc["matrices"] = std::move(mats);
  return doc;
}

nlohmann::json form_to_json(const FundForm& f) {
  json doc;
  doc["n"] = f.n();
  doc["kind_default"] = "symmetric";
  doc["c"] = f.c();
  json h = json::array();
  for (const auto& b : f.blocks()) h.push_back(matrix_to_json(b));
  doc["h"] = std::move(h);
  return doc;
}

nlohmann::json frame_to_json(const Frame4& f) {
  json doc;
  doc["rows"] = f.rows();
  doc["cols"] = f.cols();
  doc["kind_default"] = "general";
  json mats = json::array();
  for (const auto& m : f.mats()) mats.push_back({{"kind", "general"}, {"data", matrix_to_json(m)}});
  doc["matrices"] = std::move(mats);
  return doc;
}

}  // namespace ddvv
