#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// Parse the matrix-file schema {"dim": n, "rows": [[...], ...]}.
/// `source` is a filesystem path, or inline JSON when it starts with '{'.
/// Entries must be finite and symmetric within 1e-10 * (1 + maxAbs); the
/// result is symmetrized as (M + M^T)/2.
SymMatrix parse_matrix_file(const std::string& source);

nlohmann::json matrix_to_json(const Matrix& m);
SymMatrix matrix_from_json(const nlohmann::json& j);

/// FNV-1a 64-bit digest as fixed-width hex, used for report input digests.
std::string hex_digest(const std::string& bytes);

}  // namespace meanlab
