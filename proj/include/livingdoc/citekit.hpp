#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "livingdoc/detail/sha256.hpp"
#include "livingdoc/detail/strings.hpp"
#include "livingdoc/errors.hpp"
#include "livingdoc/markdown_scan.hpp"
#include "livingdoc/registry.hpp"

namespace livingdoc::citekit {

/// Rendered-output identifier for one citable work: short, digest-derived,
/// stable under additions elsewhere in the manuscript.
using ReferenceId = std::string;

struct CitationKey {
  std::string source;     // lowercase prefix: doi, pubmed, arxiv, ...
  std::string accession;  // source-specific syntax

  std::string str() const { return source + ":" + accession; }
  auto operator<=>(const CitationKey&) const = default;
};

struct CitationOccurrence {
  CitationKey key;
  std::string file;
  int line = 1;
  int column = 1;
  mdscan::Span span;  // byte range of the key inside the scanned text
};

namespace impl {

inline bool is_prefix_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '.' || c == '-' || c == '_';
}

inline bool is_accession_char(char c) {
  if (detail::is_ascii_space(c)) return false;
  switch (c) {
    case '"': case '\'': case '<': case '>': case '[': case ']':
    case '{': case '}': case ';': case ',': case '`':
      return false;
    default:
      return true;
  }
}

inline std::string strip_trailing_punct(std::string s) {
  while (!s.empty()) {
    char c = s.back();
    if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == ')') {
      s.pop_back();
    } else {
      break;
    }
  }
  return s;
}

inline bool url_is_absolute_http(const std::string& accession) {
  return accession.rfind("http://", 0) == 0 || accession.rfind("https://", 0) == 0;
}

}  // namespace impl

/// Canonical form: lowercase DOI, pmid folded to pubmed, uppercase NCT
/// accession, percent-encoding of URLs upper-cased with scheme/host
/// lowered. Idempotent.
inline CitationKey normalize_key(const CitationKey& key) {
  CitationKey out;
  out.source = detail::to_lower(key.source);
  out.accession = key.accession;
  if (out.source == "pmid") out.source = "pubmed";
  if (out.source == "doi") {
    out.accession = detail::to_lower(out.accession);
  } else if (out.source == "clinicaltrials") {
    if (out.accession.size() >= 3)
      out.accession = detail::to_upper(out.accession.substr(0, 3)) + out.accession.substr(3);
  } else if (out.source == "url") {
    std::string& u = out.accession;
    // lowercase scheme and host
    size_t scheme_end = u.find("://");
    if (scheme_end != std::string::npos) {
      size_t host_end = u.find('/', scheme_end + 3);
      if (host_end == std::string::npos) host_end = u.size();
      for (size_t i = 0; i < host_end; ++i)
        u[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(u[i])));
    }
    // uppercase percent-escape hex digits
    for (size_t i = 0; i + 2 < u.size(); ++i) {
      if (u[i] == '%') {
        u[i + 1] = static_cast<char>(std::toupper(static_cast<unsigned char>(u[i + 1])));
        u[i + 2] = static_cast<char>(std::toupper(static_cast<unsigned char>(u[i + 2])));
      }
    }
  }
  return out;
}

/// Parse the inside of a citation marker (no brackets, no leading '@').
inline CitationKey parse_citation_key(std::string_view text,
                                      const resolvers::PrefixRegistry& registry,
                                      SourcePos pos = {}) {
  size_t colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorKind::malformed_key, "citation key has no ':': \"" + std::string(text) + "\"",
                pos);
  CitationKey key;
  key.source = detail::to_lower(detail::trim(text.substr(0, colon)));
  key.accession = detail::trim(text.substr(colon + 1));
  if (key.source.empty() || key.accession.empty())
    throw Error(ErrorKind::malformed_key, "empty source or accession in \"" + std::string(text) + "\"",
                pos);
  if (!registry.is_known(key.source))
    throw Error(ErrorKind::unknown_prefix, "unknown citation prefix \"" + key.source + "\"", pos);
  CitationKey canon = normalize_key(key);
  if (canon.source == "url") {
    if (!impl::url_is_absolute_http(canon.accession))
      throw Error(ErrorKind::malformed_key, "url accession must be absolute http(s): " + canon.accession,
                  pos);
  } else if (!registry.accession_matches(canon.source, canon.accession)) {
    throw Error(ErrorKind::malformed_key,
                "accession \"" + key.accession + "\" does not match the " + canon.source + " syntax",
                pos);
  }
  return key;
}

/// All citation markers in document order: bracketed groups `[@a]` /
/// `[@a; @b]` and bare `@prefix:accession`. Markers inside fenced code,
/// inline code, and URLs are not extracted.
inline std::vector<CitationOccurrence> extract_citations(std::string_view markdown,
                                                         const std::string& file,
                                                         const resolvers::PrefixRegistry& registry) {
  mdscan::ScanResult scan = mdscan::scan(markdown);
  std::vector<mdscan::Span> excluded = scan.code;
  excluded.insert(excluded.end(), scan.urls.begin(), scan.urls.end());
  mdscan::LineIndex lines(markdown);

  std::vector<CitationOccurrence> out;
  std::vector<mdscan::Span> group_spans;

  auto locate = [&](size_t offset) {
    auto [line, col] = lines.locate(offset);
    return SourcePos{file, line, col};
  };

  // pass 1: bracketed groups
  size_t i = 0;
  while (i + 1 < markdown.size()) {
    if (markdown[i] != '[' || markdown[i + 1] != '@' || mdscan::in_any(excluded, i)) {
      ++i;
      continue;
    }
    size_t close = markdown.find(']', i);
    if (close == std::string_view::npos) break;
    group_spans.push_back({i, close + 1});
    std::string_view inside(markdown.substr(i + 1, close - i - 1));
    size_t part_start = 0;
    for (size_t k = 0; k <= inside.size(); ++k) {
      if (k == inside.size() || inside[k] == ';') {
        std::string_view part = inside.substr(part_start, k - part_start);
        size_t at = part.find('@');
        size_t lead = 0;
        while (lead < part.size() && detail::is_ascii_space(part[lead])) ++lead;
        size_t key_offset = i + 1 + part_start + (at == std::string_view::npos ? lead : at);
        SourcePos pos = locate(key_offset);
        if (at == std::string_view::npos || !detail::trim(part.substr(0, at)).empty())
          throw Error(ErrorKind::malformed_key,
                      "expected '@key' inside citation marker, got \"" + std::string(detail::trim(part)) + "\"",
                      pos);
        std::string key_text = detail::trim(part.substr(at + 1));
        CitationOccurrence occ;
        occ.key = parse_citation_key(key_text, registry, pos);
        occ.file = file;
        occ.line = pos.line;
        occ.column = pos.column;
        occ.span = {key_offset, i + 1 + part_start + k};
        out.push_back(std::move(occ));
        part_start = k + 1;
      }
    }
    i = close + 1;
  }

  // pass 2: bare keys outside groups
  i = 0;
  while (i < markdown.size()) {
    if (markdown[i] != '@' || mdscan::in_any(excluded, i) || mdscan::in_any(group_spans, i)) {
      ++i;
      continue;
    }
    if (i > 0) {
      char prev = markdown[i - 1];
      if (detail::is_word_char(prev) || prev == '.' || prev == '-') { ++i; continue; }
    }
    size_t p = i + 1;
    size_t prefix_end = p;
    while (prefix_end < markdown.size() && impl::is_prefix_char(markdown[prefix_end])) ++prefix_end;
    if (prefix_end == p || prefix_end >= markdown.size() || markdown[prefix_end] != ':') {
      ++i;
      continue;  // a mention or email, not a citation
    }
    size_t acc_end = prefix_end + 1;
    while (acc_end < markdown.size() && impl::is_accession_char(markdown[acc_end])) ++acc_end;
    std::string accession =
        impl::strip_trailing_punct(std::string(markdown.substr(prefix_end + 1, acc_end - prefix_end - 1)));
    if (accession.empty()) { ++i; continue; }
    std::string prefix(markdown.substr(p, prefix_end - p));
    if (!registry.is_known(detail::to_lower(prefix))) { i = acc_end; continue; }
    SourcePos pos = locate(i);
    CitationOccurrence occ;
    occ.key = parse_citation_key(prefix + ":" + accession, registry, pos);
    occ.file = file;
    occ.line = pos.line;
    occ.column = pos.column;
    occ.span = {i, prefix_end + 1 + accession.size()};
    out.push_back(std::move(occ));
    i = occ.span.end;
  }

  std::sort(out.begin(), out.end(), [](const CitationOccurrence& a, const CitationOccurrence& b) {
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
  });
  return out;
}

/// Digest-based ids: base62 of sha256("source:accession"), truncated to 8
/// chars, extended per colliding key until unique. Pure function of the
/// normalized key set.
inline std::map<CitationKey, ReferenceId> assign_reference_ids(const std::set<CitationKey>& keys) {
  constexpr size_t kBaseLen = 8;
  constexpr size_t kMaxLen = 12;
  std::map<CitationKey, std::string> full;
  std::map<CitationKey, size_t> len;
  for (const auto& k : keys) {
    full[k] = detail::sha256_base62(k.str());
    len[k] = kBaseLen;
  }
  for (bool collided = true; collided;) {
    collided = false;
    std::map<std::string, std::vector<CitationKey>> seen;
    for (const auto& k : keys) seen[full[k].substr(0, len[k])].push_back(k);
    for (auto& [id, group] : seen) {
      if (group.size() < 2) continue;
      collided = true;
      for (const auto& k : group) {
        if (len[k] >= kMaxLen || len[k] >= full[k].size())
          throw Error(ErrorKind::parse_failed, "reference id collision not resolvable for " + k.str());
        ++len[k];
      }
    }
  }
  std::map<CitationKey, ReferenceId> out;
  for (const auto& k : keys) out[k] = full[k].substr(0, len[k]);
  return out;
}

}  // namespace livingdoc::citekit
