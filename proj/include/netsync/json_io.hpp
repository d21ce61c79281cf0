#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "netsync/linalg.hpp"
#include "netsync/rational.hpp"

namespace netsync {

using OrderedJson = nlohmann::ordered_json;

/// "%.17g" so every double round-trips; non-finite values become null.
std::string format_double(double v);

/// Serializes with 2-space indentation and 17-significant-digit floats.
std::string dump_json(const OrderedJson& doc);
std::string dump_json(const nlohmann::json& doc);

/// {"num": [...], "den": [...]}, ascending coefficients.
OrderedJson rf_to_json(const RationalFunction& f);
/// {"dim": n, "entries": [[re, im], ...]} row-major.
OrderedJson complex_matrix_to_json(const ComplexMatrix& m);
/// [[...], ...] row-major.
OrderedJson real_matrix_to_json(const RealMatrix& m);

}  // namespace netsync
