#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "livingdoc/errors.hpp"

namespace livingdoc::detail {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_failed, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Write via temp file + rename so readers never see partial content.
inline void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_failed, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::io_failed, "short write to " + path.string());
  }
  fs::rename(tmp, path);
}

inline std::string iso8601_utc(std::chrono::system_clock::time_point tp) {
  std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

/// Expand a trailing-component glob ("vars/*.json"). Only `*` and `?` in the
/// last path component are supported; a plain path returns itself when it
/// exists. Results sorted lexicographically.
inline std::vector<fs::path> expand_glob(const fs::path& pattern) {
  const std::string name = pattern.filename().string();
  if (name.find('*') == std::string::npos && name.find('?') == std::string::npos) {
    if (fs::exists(pattern)) return {pattern};
    return {};
  }
  auto matches = [](const std::string& pat, const std::string& s) {
    // iterative wildcard match, * and ? only
    size_t p = 0, i = 0, star = std::string::npos, mark = 0;
    while (i < s.size()) {
      if (p < pat.size() && (pat[p] == '?' || pat[p] == s[i])) {
        ++p; ++i;
      } else if (p < pat.size() && pat[p] == '*') {
        star = p++; mark = i;
      } else if (star != std::string::npos) {
        p = star + 1; i = ++mark;
      } else {
        return false;
      }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
  };
  std::vector<fs::path> out;
  fs::path dir = pattern.parent_path();
  if (dir.empty()) dir = ".";
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && matches(name, entry.path().filename().string()))
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace livingdoc::detail
