/** \file io.h
    JSON system files.  Two kinds are accepted:

      1-D system:   {"poles": [...], "weights": [...]}
      arrangement:  {"n": 2, "hyperplanes": [{"u0": 0, "u": [1, 0], "lambda": 1}, ...]}

    Numbers may be plain JSON numbers or strings holding exact decimals or
    rationals ("3/2", "0.25", "-1e-3"); the string form avoids binary
    floating-point ingestion error.  Schema violations raise SchemaError
    with a message naming the offending field and index.
*/
#pragma once

#include "afinv/arrangement.h"
#include "afinv/oned.h"

#include <stdexcept>
#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace io {

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json load_json_file(const std::string& path);

/// Number or exact-string scalar at `field` (field name used in errors only).
num::Real parse_number(const nlohmann::json& j, const std::string& field);

bool is_oned_file(const nlohmann::json& j);
bool is_arrangement_file(const nlohmann::json& j);

oned::System parse_oned_system(const nlohmann::json& j);
hyper::Arrangement parse_arrangement(const nlohmann::json& j);

}  // namespace io
