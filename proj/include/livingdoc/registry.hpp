#pragma once

#include <map>
#include <optional>
#include <regex>
#include <string>

#include "livingdoc/detail/json_io.hpp"
#include "livingdoc/detail/strings.hpp"
#include "livingdoc/errors.hpp"

namespace livingdoc::resolvers {

enum class ResolverKind {
  doi,
  pubmed,
  arxiv,
  clinicaltrials,
  url,
  raw,
  compact,  // registered compact-URI prefix resolved via URL template
};

struct PrefixEntry {
  ResolverKind kind = ResolverKind::compact;
  std::string accession_pattern;  // ECMAScript regex, full match; empty = any
  std::string url_template;       // for compact prefixes: "{ac}" placeholder
};

/// Expand a compact-URI resolution template. "{ac}" marks the accession.
inline std::string expand_template(const std::string& tmpl, const std::string& accession) {
  return detail::replace_all(tmpl, "{ac}", accession);
}

/// Maps citation prefixes to resolver kind, accession syntax, and (for
/// compact prefixes) a resolution URL template. Built-in prefixes are always
/// present; additional compact prefixes load from a manifest file.
class PrefixRegistry {
 public:
  PrefixRegistry() {
    entries_["doi"] = {ResolverKind::doi, R"(10\.[^/]+/.+)", ""};
    entries_["pubmed"] = {ResolverKind::pubmed, R"([0-9]{1,9})", ""};
    entries_["pmid"] = {ResolverKind::pubmed, R"([0-9]{1,9})", ""};  // alias of pubmed
    entries_["arxiv"] = {ResolverKind::arxiv, R"([a-zA-Z.\-]+/[0-9]{7}(v[0-9]+)?|[0-9]{4}\.[0-9]{4,5}(v[0-9]+)?)", ""};
    entries_["clinicaltrials"] = {ResolverKind::clinicaltrials, R"(NCT[0-9]{8})", ""};
    entries_["url"] = {ResolverKind::url, "", ""};
    entries_["raw"] = {ResolverKind::raw, "", ""};
  }

  /// Manifest: {"format_version": 1, "prefixes": {"<prefix>": {"pattern":
  /// "...", "url_template": "https://...{ac}"}}}. Prefixes must be lowercase
  /// and must not shadow built-ins.
  void load_manifest(const detail::fs::path& path) {
    detail::json j = detail::load_json_file(path);
    detail::reject_unknown_keys(j, {"format_version", "prefixes"}, "registry manifest");
    if (!j.contains("prefixes") || !j["prefixes"].is_object())
      throw Error(ErrorKind::config_invalid, "registry manifest needs a \"prefixes\" object");
    for (auto it = j["prefixes"].begin(); it != j["prefixes"].end(); ++it) {
      const std::string& prefix = it.key();
      if (prefix.empty() || prefix != detail::to_lower(prefix))
        throw Error(ErrorKind::config_invalid, "registry prefix must be lowercase: " + prefix);
      if (entries_.count(prefix) && entries_[prefix].kind != ResolverKind::compact)
        throw Error(ErrorKind::config_invalid, "prefix shadows a built-in: " + prefix);
      detail::reject_unknown_keys(*it, {"pattern", "url_template"}, "prefix " + prefix);
      PrefixEntry e;
      e.kind = ResolverKind::compact;
      e.accession_pattern = it->value("pattern", "");
      e.url_template = it->value("url_template", "");
      if (e.url_template.empty())
        throw Error(ErrorKind::config_invalid, "prefix " + prefix + " needs a url_template");
      entries_[prefix] = std::move(e);
    }
  }

  bool is_known(const std::string& prefix) const { return entries_.count(prefix) > 0; }

  const PrefixEntry& entry(const std::string& prefix) const {
    auto it = entries_.find(prefix);
    if (it == entries_.end())
      throw Error(ErrorKind::unknown_prefix, "prefix not registered: " + prefix);
    return it->second;
  }

  bool accession_matches(const std::string& prefix, const std::string& accession) const {
    const PrefixEntry& e = entry(prefix);
    if (e.accession_pattern.empty()) return !accession.empty();
    return std::regex_match(accession, std::regex(e.accession_pattern));
  }

  const std::map<std::string, PrefixEntry>& entries() const { return entries_; }

 private:
  std::map<std::string, PrefixEntry> entries_;
};

}  // namespace livingdoc::resolvers
