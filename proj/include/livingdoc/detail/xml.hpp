#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "livingdoc/detail/strings.hpp"

namespace livingdoc::detail {

/// Targeted XML element-text extraction for fixed-shape registry payloads
/// (clinical-trial study records, Atom feeds). Not a general XML parser:
/// namespaces are matched literally, processing instructions and comments
/// are skipped, same-tag nesting is tracked.

inline std::string xml_unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    size_t semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(s[i++]);
      continue;
    }
    std::string_view ent = s.substr(i + 1, semi - i - 1);
    if (ent == "amp") out.push_back('&');
    else if (ent == "lt") out.push_back('<');
    else if (ent == "gt") out.push_back('>');
    else if (ent == "quot") out.push_back('"');
    else if (ent == "apos") out.push_back('\'');
    else if (!ent.empty() && ent[0] == '#') {
      char32_t cp = 0;
      bool ok = false;
      if (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X')) {
        for (size_t k = 2; k < ent.size(); ++k) {
          char c = ent[k];
          int d = (c >= '0' && c <= '9')   ? c - '0'
                  : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                  : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                           : -1;
          if (d < 0) { ok = false; break; }
          cp = cp * 16 + static_cast<char32_t>(d);
          ok = true;
        }
      } else {
        for (size_t k = 1; k < ent.size(); ++k) {
          if (ent[k] < '0' || ent[k] > '9') { ok = false; break; }
          cp = cp * 10 + static_cast<char32_t>(ent[k] - '0');
          ok = true;
        }
      }
      if (ok && cp > 0) {
        // inline UTF-8 encode
        if (cp < 0x80) out.push_back(static_cast<char>(cp));
        else if (cp < 0x800) {
          out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
          out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
          out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
          out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
          out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
          out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
          out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
      } else {
        out.append(s.substr(i, semi - i + 1));
      }
    } else {
      out.append(s.substr(i, semi - i + 1));
    }
    i = semi + 1;
  }
  return out;
}

struct XmlRange {
  size_t begin = 0;  // content start
  size_t end = 0;    // content end (exclusive)
};

/// Find the content range of the first <tag ...>...</tag> at or after `from`.
/// Self-closing <tag/> yields an empty range at the tag end.
inline std::optional<XmlRange> xml_find(std::string_view xml, std::string_view tag,
                                        size_t from = 0) {
  const std::string open = "<" + std::string(tag);
  size_t pos = from;
  while (true) {
    pos = xml.find(open, pos);
    if (pos == std::string_view::npos) return std::nullopt;
    size_t after = pos + open.size();
    if (after < xml.size() && (xml[after] == '>' || xml[after] == ' ' || xml[after] == '\t' ||
                               xml[after] == '\n' || xml[after] == '\r' || xml[after] == '/')) {
      size_t gt = xml.find('>', after);
      if (gt == std::string_view::npos) return std::nullopt;
      if (xml[gt - 1] == '/') return XmlRange{gt + 1, gt + 1};  // self-closing
      size_t content_begin = gt + 1;
      // find matching close, tracking same-tag nesting
      int depth = 1;
      size_t scan = content_begin;
      const std::string close = "</" + std::string(tag) + ">";
      while (depth > 0) {
        size_t next_open = xml.find(open, scan);
        size_t next_close = xml.find(close, scan);
        if (next_close == std::string_view::npos) return std::nullopt;
        if (next_open != std::string_view::npos && next_open < next_close) {
          size_t a = next_open + open.size();
          if (a < xml.size() && (xml[a] == '>' || xml[a] == ' ' || xml[a] == '/')) {
            size_t g = xml.find('>', a);
            if (g == std::string_view::npos) return std::nullopt;
            if (xml[g - 1] != '/') ++depth;
            scan = g + 1;
          } else {
            scan = next_open + open.size();
          }
        } else {
          --depth;
          if (depth == 0) return XmlRange{content_begin, next_close};
          scan = next_close + close.size();
        }
      }
    }
    pos = after;
  }
}

/// Strip child tags and CDATA markers, unescape entities, collapse
/// whitespace runs to single spaces.
inline std::string xml_clean_text(std::string_view raw) {
  std::string no_tags;
  no_tags.reserve(raw.size());
  size_t i = 0;
  while (i < raw.size()) {
    if (raw.compare(i, 9, "<![CDATA[") == 0) {
      size_t end = raw.find("]]>", i + 9);
      if (end == std::string_view::npos) end = raw.size();
      no_tags.append(raw.substr(i + 9, end - i - 9));
      i = (end == raw.size()) ? end : end + 3;
    } else if (raw[i] == '<') {
      size_t gt = raw.find('>', i);
      if (gt == std::string_view::npos) break;
      i = gt + 1;
    } else {
      no_tags.push_back(raw[i++]);
    }
  }
  std::string unescaped = xml_unescape(no_tags);
  std::string out;
  out.reserve(unescaped.size());
  bool in_space = false;
  for (char c : unescaped) {
    if (is_ascii_space(c)) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(c);
  }
  return out;
}

/// Text of the first element along a dotted path ("feed.entry.title").
inline std::optional<std::string> xml_text(std::string_view xml, std::string_view path) {
  std::string_view cur = xml;
  size_t offset = 0;
  for (const auto& tag : split(path, '.')) {
    auto r = xml_find(cur, tag);
    if (!r) return std::nullopt;
    cur = cur.substr(r->begin, r->end - r->begin);
    (void)offset;
  }
  return xml_clean_text(cur);
}

/// Texts of every element `leaf` inside the first element along `path`.
inline std::vector<std::string> xml_texts(std::string_view xml, std::string_view path,
                                          std::string_view leaf) {
  std::string_view cur = xml;
  if (!path.empty()) {
    for (const auto& tag : split(path, '.')) {
      auto r = xml_find(cur, tag);
      if (!r) return {};
      cur = cur.substr(r->begin, r->end - r->begin);
    }
  }
  std::vector<std::string> out;
  size_t from = 0;
  while (true) {
    auto r = xml_find(cur, leaf, from);
    if (!r) break;
    out.push_back(xml_clean_text(cur.substr(r->begin, r->end - r->begin)));
    from = r->end + leaf.size() + 3;
  }
  return out;
}

}  // namespace livingdoc::detail
