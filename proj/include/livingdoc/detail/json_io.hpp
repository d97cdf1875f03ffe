#pragma once

#include <json.hpp>
#include <set>
#include <string>

#include "livingdoc/detail/io.hpp"
#include "livingdoc/errors.hpp"

namespace livingdoc::detail {

using json = nlohmann::json;

/// Canonical serialization used for every machine-readable output:
/// object keys sorted (nlohmann's default map ordering), two-space indent,
/// UTF-8 passed through, trailing newline.
inline std::string canonical_json(const json& j) {
  return j.dump(2, ' ', false) + "\n";
}

inline json parse_json(std::string_view text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw Error(ErrorKind::parse_failed, "invalid JSON in " + what);
  return j;
}

inline json load_json_file(const fs::path& path) {
  return parse_json(read_file(path), path.string());
}

/// Strict-parsing guard: any key outside `allowed` is an error.
inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& what) {
  if (!obj.is_object())
    throw Error(ErrorKind::config_invalid, what + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw Error(ErrorKind::config_invalid, "unknown key \"" + it.key() + "\" in " + what);
  }
}

}  // namespace livingdoc::detail
