#pragma once

#include <map>
#include <string>
#include <vector>

#include "livingdoc/citekit.hpp"
#include "livingdoc/detail/json_io.hpp"

namespace livingdoc::resolvers {

struct CslName {
  std::string family;
  std::string given;
  std::string literal;  // set instead of family/given for corporate names

  auto operator<=>(const CslName&) const = default;
};

struct CslDate {
  int year = 0;
  int month = 0;  // 0 = absent
  int day = 0;

  auto operator<=>(const CslDate&) const = default;
};

/// Citation Style Language data item, plus the source key and a bag of
/// source-specific extras (trial sponsor, investigators, summary).
struct CslItem {
  citekit::ReferenceId id;
  std::string type;  // article-journal, report, webpage, ...
  std::string title;
  std::vector<CslName> authors;
  CslDate issued;
  std::string container_title;
  std::string url;
  std::string doi;  // normalized lowercase
  citekit::CitationKey source_key;
  std::map<std::string, std::string> extra;

  auto operator<=>(const CslItem&) const = default;

  detail::json to_json() const {
    detail::json j;
    j["id"] = id;
    j["type"] = type;
    j["title"] = title;
    detail::json authors_json = detail::json::array();
    for (const auto& a : authors) {
      detail::json n;
      if (!a.literal.empty()) {
        n["literal"] = a.literal;
      } else {
        n["family"] = a.family;
        if (!a.given.empty()) n["given"] = a.given;
      }
      authors_json.push_back(n);
    }
    j["author"] = authors_json;
    if (issued.year > 0) {
      detail::json parts = detail::json::array();
      parts.push_back(issued.year);
      if (issued.month > 0) {
        parts.push_back(issued.month);
        if (issued.day > 0) parts.push_back(issued.day);
      }
      j["issued"]["date-parts"] = detail::json::array({parts});
    }
    if (!container_title.empty()) j["container-title"] = container_title;
    if (!url.empty()) j["URL"] = url;
    if (!doi.empty()) j["DOI"] = doi;
    j["source-key"] = source_key.str();
    if (!extra.empty()) j["extra"] = extra;
    return j;
  }

  static CslItem from_json(const detail::json& j) {
    CslItem item;
    item.id = j.value("id", "");
    item.type = j.value("type", "");
    item.title = j.value("title", "");
    if (j.contains("author")) {
      for (const auto& a : j["author"]) {
        CslName n;
        n.literal = a.value("literal", "");
        n.family = a.value("family", "");
        n.given = a.value("given", "");
        item.authors.push_back(std::move(n));
      }
    }
    if (j.contains("issued") && j["issued"].contains("date-parts") &&
        !j["issued"]["date-parts"].empty()) {
      const auto& parts = j["issued"]["date-parts"][0];
      if (parts.size() > 0 && parts[0].is_number()) item.issued.year = parts[0].get<int>();
      if (parts.size() > 1 && parts[1].is_number()) item.issued.month = parts[1].get<int>();
      if (parts.size() > 2 && parts[2].is_number()) item.issued.day = parts[2].get<int>();
    }
    item.container_title = j.value("container-title", "");
    item.url = j.value("URL", "");
    item.doi = j.value("DOI", "");
    std::string sk = j.value("source-key", "");
    size_t colon = sk.find(':');
    if (colon != std::string::npos) {
      item.source_key.source = sk.substr(0, colon);
      item.source_key.accession = sk.substr(colon + 1);
    }
    if (j.contains("extra")) {
      for (auto it = j["extra"].begin(); it != j["extra"].end(); ++it)
        item.extra[it.key()] = it->get<std::string>();
    }
    return item;
  }

  /// Canonical byte form used in build stamps and determinism checks.
  std::string canonical() const { return detail::canonical_json(to_json()); }
};

}  // namespace livingdoc::resolvers
