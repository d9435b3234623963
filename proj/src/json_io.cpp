#include "meanlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "meanlab/errors.hpp"

namespace meanlab {

namespace {

SymMatrix validate_matrix_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows"))
    throw ValidationError("matrix file: expected {\"dim\": n, \"rows\": [[...]]}");
  if (!j["dim"].is_number_integer())
    throw ValidationError("matrix file: dim must be an integer");
  const int n = j["dim"].get<int>();
  if (n < 1) throw ValidationError("matrix file: dim must be >= 1");

  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
    throw ValidationError("matrix file: rows must be an array of dim rows");

  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      throw ValidationError("matrix file: each row must hold dim numbers");
    for (int k = 0; k < n; ++k) {
      const auto& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number()) throw ValidationError("matrix file: non-numeric entry");
      const double v = cell.get<double>();
      if (!std::isfinite(v)) throw ValidationError("matrix file: NaN/Inf entry");
      m(i, k) = v;
    }
  }

  const double tol = 1e-10 * (1.0 + m.max_abs());
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (std::abs(m(i, k) - m(k, i)) > tol)
        throw ValidationError("matrix file: asymmetric beyond tolerance");
  return SymMatrix::symmetrized(m);
}

}  // namespace

SymMatrix parse_matrix_file(const std::string& source) {
  std::string text;
  if (!source.empty() && source.front() == '{') {
    text = source;
  } else {
    std::ifstream in(source);
    if (!in) throw ParseError("matrix file: cannot open " + source);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix file: ") + e.what());
  }
  return validate_matrix_json(j);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"dim", m.dim()}, {"rows", std::move(rows)}};
}

SymMatrix matrix_from_json(const nlohmann::json& j) { return validate_matrix_json(j); }

std::string hex_digest(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace meanlab
