#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace livingdoc {

enum class ErrorKind {
  malformed_key,
  unknown_prefix,
  offline_miss,
  fetch_failed,
  parse_failed,
  revision_discovery_failed,
  missing_content,
  metadata_invalid,
  unknown_variable,
  unterminated_placeholder,
  duplicate_variable,
  unknown_section,
  asset_missing,
  converter_failed,
  dictionary_missing,
  empty_series,
  config_invalid,
  io_failed,
  usage,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::malformed_key: return "malformed_key";
    case ErrorKind::unknown_prefix: return "unknown_prefix";
    case ErrorKind::offline_miss: return "offline_miss";
    case ErrorKind::fetch_failed: return "fetch_failed";
    case ErrorKind::parse_failed: return "parse_failed";
    case ErrorKind::revision_discovery_failed: return "revision_discovery_failed";
    case ErrorKind::missing_content: return "missing_content";
    case ErrorKind::metadata_invalid: return "metadata_invalid";
    case ErrorKind::unknown_variable: return "unknown_variable";
    case ErrorKind::unterminated_placeholder: return "unterminated_placeholder";
    case ErrorKind::duplicate_variable: return "duplicate_variable";
    case ErrorKind::unknown_section: return "unknown_section";
    case ErrorKind::asset_missing: return "asset_missing";
    case ErrorKind::converter_failed: return "converter_failed";
    case ErrorKind::dictionary_missing: return "dictionary_missing";
    case ErrorKind::empty_series: return "empty_series";
    case ErrorKind::config_invalid: return "config_invalid";
    case ErrorKind::io_failed: return "io_failed";
    case ErrorKind::usage: return "usage";
  }
  return "unknown";
}

/// Position of a finding inside a manuscript source file (1-based).
struct SourcePos {
  std::string file;
  int line = 0;
  int column = 0;

  std::string str() const {
    if (file.empty()) return {};
    std::string s = file;
    if (line > 0) {
      s += ":" + std::to_string(line);
      if (column > 0) s += ":" + std::to_string(column);
    }
    return s;
  }
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(format(kind, message, {})), kind_(kind) {}

  Error(ErrorKind kind, std::string message, SourcePos pos)
      : std::runtime_error(format(kind, message, pos)), kind_(kind), pos_(std::move(pos)) {}

  Error(ErrorKind kind, std::string message, int http_status)
      : std::runtime_error(format(kind, message, {})), kind_(kind), http_status_(http_status) {}

  ErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  std::optional<int> http_status() const { return http_status_; }

  /// true when the failure is a network-class error (CLI exit code 2).
  bool is_network() const {
    return kind_ == ErrorKind::fetch_failed || kind_ == ErrorKind::offline_miss ||
           kind_ == ErrorKind::revision_discovery_failed;
  }

 private:
  static std::string format(ErrorKind kind, const std::string& message, const SourcePos& pos) {
    std::string s = std::string(to_string(kind)) + ": " + message;
    if (!pos.file.empty()) s += " [" + pos.str() + "]";
    return s;
  }

  ErrorKind kind_;
  SourcePos pos_;
  std::optional<int> http_status_;
};

}  // namespace livingdoc
