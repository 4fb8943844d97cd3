#pragma once

// JSON shapes shared by every report. Exact quantities are strings.

#include <kklab/numeric.hpp>

#include <json.hpp>

namespace kklab {

/// {"radicand": "a/b", "index": "k", "token": "root:..", "enclosure": [lo, hi]}
/// for radicand^(1/k); the token parses back to the same value.
nlohmann::json root_json(const Root & value, int digits = 12);

/// "root:B:E" for B^(-1/E) when the radicand is a unit fraction, else
/// "root:r:k" meaning r^(1/k) with r written as a rational. Plain rationals
/// print as themselves.
std::string root_token(const Root & value);

nlohmann::json enclosure_json(const Root & value, int digits = 12);

} // namespace kklab
