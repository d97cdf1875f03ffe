#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "livingdoc/detail/strings.hpp"

namespace livingdoc::mdscan {

/// Half-open byte range into a markdown document.
struct Span {
  size_t begin = 0;
  size_t end = 0;
  bool contains(size_t pos) const { return pos >= begin && pos < end; }
};

inline bool in_any(const std::vector<Span>& spans, size_t pos) {
  for (const auto& s : spans)
    if (s.contains(pos)) return true;
  return false;
}

inline bool overlaps_any(const std::vector<Span>& spans, size_t begin, size_t end) {
  for (const auto& s : spans)
    if (begin < s.end && s.begin < end) return true;
  return false;
}

/// Byte offsets of line starts; maps an offset to 1-based line/column.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) {
    starts_.push_back(0);
    for (size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') starts_.push_back(i + 1);
  }

  // column counts bytes; manuscripts are expected to be mostly ASCII and the
  // oracle scripts use the same convention
  std::pair<int, int> locate(size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    size_t line_idx = static_cast<size_t>(it - starts_.begin()) - 1;
    return {static_cast<int>(line_idx) + 1,
            static_cast<int>(offset - starts_[line_idx]) + 1};
  }

 private:
  std::vector<size_t> starts_;
};

struct ScanResult {
  std::vector<Span> code;          // fenced blocks and inline code spans
  std::vector<Span> urls;          // bare URLs, autolinks, link/image targets
  std::vector<Span> html_tags;     // <tag ...>, </tag>, <!-- comments -->
  std::vector<Span> placeholders;  // {{name}}

  std::vector<Span> all() const {
    std::vector<Span> out;
    out.reserve(code.size() + urls.size() + html_tags.size() + placeholders.size());
    out.insert(out.end(), code.begin(), code.end());
    out.insert(out.end(), urls.begin(), urls.end());
    out.insert(out.end(), html_tags.begin(), html_tags.end());
    out.insert(out.end(), placeholders.begin(), placeholders.end());
    std::sort(out.begin(), out.end(), [](const Span& a, const Span& b) {
      return a.begin < b.begin;
    });
    return out;
  }
};

namespace impl {

inline size_t fence_run(std::string_view text, size_t line_start, char& fence_char) {
  size_t i = line_start;
  int spaces = 0;
  while (i < text.size() && text[i] == ' ' && spaces < 3) { ++i; ++spaces; }
  if (i >= text.size() || (text[i] != '`' && text[i] != '~')) return 0;
  char c = text[i];
  size_t n = 0;
  while (i + n < text.size() && text[i + n] == c) ++n;
  if (n < 3) return 0;
  fence_char = c;
  return n;
}

inline size_t line_end(std::string_view text, size_t pos) {
  size_t e = text.find('\n', pos);
  return e == std::string_view::npos ? text.size() : e;
}

}  // namespace impl

/// Find fenced code blocks (``` / ~~~, entire block including fence lines).
inline std::vector<Span> scan_fences(std::string_view text) {
  std::vector<Span> out;
  size_t pos = 0;
  while (pos < text.size()) {
    char fc = 0;
    size_t run = impl::fence_run(text, pos, fc);
    size_t eol = impl::line_end(text, pos);
    if (run >= 3) {
      // opening fence; scan for a closing line with >= run of the same char
      size_t scan = eol == text.size() ? eol : eol + 1;
      size_t close_end = text.size();
      while (scan < text.size()) {
        char cc = 0;
        size_t crun = impl::fence_run(text, scan, cc);
        size_t ceol = impl::line_end(text, scan);
        if (crun >= run && cc == fc) {
          close_end = ceol == text.size() ? ceol : ceol + 1;
          break;
        }
        scan = ceol == text.size() ? ceol : ceol + 1;
      }
      out.push_back({pos, close_end});
      pos = close_end;
    } else {
      pos = eol == text.size() ? eol : eol + 1;
    }
  }
  return out;
}

/// Inline code spans: a backtick run closed by an equal-length run.
inline std::vector<Span> scan_code_spans(std::string_view text,
                                         const std::vector<Span>& fences) {
  std::vector<Span> out;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '`' || in_any(fences, i)) { ++i; continue; }
    size_t n = 0;
    while (i + n < text.size() && text[i + n] == '`') ++n;
    // search for a closing run of exactly n backticks
    size_t scan = i + n;
    size_t close = std::string_view::npos;
    while (scan < text.size()) {
      if (text[scan] == '`' && !in_any(fences, scan)) {
        size_t m = 0;
        while (scan + m < text.size() && text[scan + m] == '`') ++m;
        if (m == n) { close = scan; break; }
        scan += m;
      } else {
        ++scan;
      }
    }
    if (close != std::string_view::npos) {
      out.push_back({i, close + n});
      i = close + n;
    } else {
      i += n;
    }
  }
  return out;
}

/// Bare http(s) URLs, <autolinks>, and markdown link/image targets "](...)".
inline std::vector<Span> scan_urls(std::string_view text, const std::vector<Span>& code) {
  std::vector<Span> out;
  size_t i = 0;
  while (i < text.size()) {
    if (in_any(code, i)) { ++i; continue; }
    if (text.compare(i, 7, "http://") == 0 || text.compare(i, 8, "https://") == 0) {
      size_t e = i;
      while (e < text.size() && !detail::is_ascii_space(text[e]) && text[e] != '<' &&
             text[e] != '>' && text[e] != '"' && text[e] != ')' && text[e] != ']')
        ++e;
      while (e > i && (text[e - 1] == '.' || text[e - 1] == ',' || text[e - 1] == ';' ||
                       text[e - 1] == ':' || text[e - 1] == '!' || text[e - 1] == '?'))
        --e;
      out.push_back({i, e});
      i = e;
      continue;
    }
    if (text.compare(i, 2, "](") == 0) {
      size_t close = text.find(')', i + 2);
      if (close != std::string_view::npos) {
        out.push_back({i + 2, close});
        i = close + 1;
        continue;
      }
    }
    ++i;
  }
  return out;
}

/// HTML-ish tags and comments outside code.
inline std::vector<Span> scan_html_tags(std::string_view text, const std::vector<Span>& code) {
  std::vector<Span> out;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '<' || in_any(code, i)) { ++i; continue; }
    if (text.compare(i, 4, "<!--") == 0) {
      size_t close = text.find("-->", i + 4);
      size_t end = close == std::string_view::npos ? text.size() : close + 3;
      out.push_back({i, end});
      i = end;
      continue;
    }
    size_t j = i + 1;
    if (j < text.size() && text[j] == '/') ++j;
    if (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) {
      size_t close = text.find('>', j);
      size_t nl = text.find('\n', j);
      if (close != std::string_view::npos && (nl == std::string_view::npos || close < nl)) {
        out.push_back({i, close + 1});
        i = close + 1;
        continue;
      }
    }
    ++i;
  }
  return out;
}

/// {{placeholder}} spans outside code.
inline std::vector<Span> scan_placeholders(std::string_view text,
                                           const std::vector<Span>& code) {
  std::vector<Span> out;
  size_t i = 0;
  while (i + 1 < text.size()) {
    if (in_any(code, i) || text[i] != '{' || text[i + 1] != '{') { ++i; continue; }
    if (i > 0 && text[i - 1] == '\\') { i += 2; continue; }  // escaped literal
    size_t close = text.find("}}", i + 2);
    if (close == std::string_view::npos) break;
    out.push_back({i, close + 2});
    i = close + 2;
  }
  return out;
}

inline ScanResult scan(std::string_view text) {
  ScanResult r;
  r.code = scan_fences(text);
  auto spans = scan_code_spans(text, r.code);
  r.code.insert(r.code.end(), spans.begin(), spans.end());
  std::sort(r.code.begin(), r.code.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  r.urls = scan_urls(text, r.code);
  r.html_tags = scan_html_tags(text, r.code);
  r.placeholders = scan_placeholders(text, r.code);
  return r;
}

}  // namespace livingdoc::mdscan
