#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "livingdoc/citekit.hpp"

using namespace livingdoc;
using citekit::CitationKey;

namespace {
resolvers::PrefixRegistry test_registry() {
  return resolvers::PrefixRegistry{};
}
}  // namespace

TEST_CASE("parse_citation_key splits prefix and accession") {
  auto reg = test_registry();
  auto key = citekit::parse_citation_key("doi:10.1371/journal.pcbi.1007128", reg);
  CHECK(key.source == "doi");
  CHECK(key.accession == "10.1371/journal.pcbi.1007128");

  auto trial = citekit::parse_citation_key("clinicaltrials:NCT04280705", reg);
  CHECK(trial.source == "clinicaltrials");
  CHECK(trial.accession == "NCT04280705");

  CHECK_THROWS_MATCHES(citekit::parse_citation_key("doi10.1371/x", reg), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::malformed_key;
                       }));
  CHECK_THROWS_MATCHES(citekit::parse_citation_key("nosuch:123", reg), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::unknown_prefix;
                       }));
  CHECK_THROWS_AS(citekit::parse_citation_key("doi:", reg), Error);
  CHECK_THROWS_AS(citekit::parse_citation_key(":x", reg), Error);
  // malformed NCT id rejected before any network involvement
  CHECK_THROWS_AS(citekit::parse_citation_key("clinicaltrials:NCT123", reg), Error);
  // url accession must be an absolute http(s) URL
  CHECK_THROWS_AS(citekit::parse_citation_key("url:ftp://x", reg), Error);
  CHECK_NOTHROW(citekit::parse_citation_key("url:https://example.org/x", reg));
}

TEST_CASE("normalize_key canonicalizes and is idempotent") {
  CitationKey upper{"doi", "10.1371/JOURNAL.PCBI.1007128"};
  auto norm = citekit::normalize_key(upper);
  CHECK(norm.accession == "10.1371/journal.pcbi.1007128");

  CitationKey pmid{"pmid", "12345"};
  CHECK(citekit::normalize_key(pmid).source == "pubmed");

  CitationKey trial{"clinicaltrials", "NCT04280705"};
  CHECK(citekit::normalize_key(trial) == trial);

  CitationKey url{"url", "HTTPS://Example.org/A%2fb"};
  auto nurl = citekit::normalize_key(url);
  CHECK(nurl.accession == "https://example.org/A%2Fb");

  CHECK(citekit::normalize_key(norm) == norm);
  CHECK(citekit::normalize_key(nurl) == nurl);
}

TEST_CASE("extract_citations finds bracketed and bare markers in order") {
  auto reg = test_registry();
  auto occ = citekit::extract_citations("see [@doi:10.1/a] and [@doi:10.1/b]", "f.md", reg);
  REQUIRE(occ.size() == 2);
  CHECK(occ[0].key.accession == "10.1/a");
  CHECK(occ[1].key.accession == "10.1/b");
  CHECK(occ[0].line == 1);
  CHECK(occ[0].column < occ[1].column);

  // code spans and fences excluded
  CHECK(citekit::extract_citations("`[@doi:10.1/a]`", "f.md", reg).empty());
  CHECK(citekit::extract_citations("```\n[@doi:10.1/a]\n```\n", "f.md", reg).empty());
  // URLs excluded
  CHECK(citekit::extract_citations("see https://x.org/@doi:10.1/a today", "f.md", reg).empty());
  CHECK(citekit::extract_citations("[link](https://x.org/[@doi:10.1/a])", "f.md", reg).empty());

  // bare form with word boundary
  auto bare = citekit::extract_citations("per @clinicaltrials:NCT04280705, results...", "f.md", reg);
  REQUIRE(bare.size() == 1);
  CHECK(bare[0].key.accession == "NCT04280705");
  // trailing sentence punctuation is not part of the accession
  auto trailing = citekit::extract_citations("see @pubmed:12345.", "f.md", reg);
  REQUIRE(trailing.size() == 1);
  CHECK(trailing[0].key.accession == "12345");
  // email-like text is not a citation
  CHECK(citekit::extract_citations("mail me at greene@uni.edu: thanks", "f.md", reg).empty());
  // unknown bare prefixes are prose, not errors
  CHECK(citekit::extract_citations("meet @alice: 5pm", "f.md", reg).empty());

  // semicolon-separated multi-key marker
  auto multi = citekit::extract_citations("[@doi:10.1/a; @pubmed:99]", "f.md", reg);
  REQUIRE(multi.size() == 2);
  CHECK(multi[0].key.source == "doi");
  CHECK(multi[1].key.source == "pubmed");

  // malformed marker carries the file position
  try {
    citekit::extract_citations("x\nyy [@doi:nope]", "file.md", reg);
    FAIL("expected malformed_key");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::malformed_key);
    CHECK(e.pos().file == "file.md");
    CHECK(e.pos().line == 2);
    CHECK(e.pos().column == 5);
  }
}

TEST_CASE("extraction per-file concatenation equals whole-text extraction") {
  auto reg = test_registry();
  std::string a = "alpha [@doi:10.1/a] beta\n";
  std::string b = "@pubmed:7 gamma\n";
  auto whole = citekit::extract_citations(a + b, "m.md", reg);
  auto pa = citekit::extract_citations(a, "m.md", reg);
  auto pb = citekit::extract_citations(b, "m.md", reg);
  REQUIRE(whole.size() == pa.size() + pb.size());
  CHECK(whole[0].key == pa[0].key);
  CHECK(whole[1].key == pb[0].key);
}

TEST_CASE("assign_reference_ids matches the frozen digest oracle") {
  std::set<CitationKey> keys{
      {"doi", "10.1371/journal.pcbi.1007128"},
      {"pubmed", "32353859"},
      {"arxiv", "2004.07213"},
      {"clinicaltrials", "NCT04280705"},
      {"url", "https://covidtracker.example.org/data"},
      {"refseq", "NC_045512"},
  };
  auto ids = citekit::assign_reference_ids(keys);
  REQUIRE(ids.size() == 6);
  // frozen with python hashlib + base62 oracle
  CHECK(ids[{"doi", "10.1371/journal.pcbi.1007128"}] == "pKbva0WP");
  CHECK(ids[{"pubmed", "32353859"}] == "vwahw9mg");
  CHECK(ids[{"arxiv", "2004.07213"}] == "aPqOttQK");
  CHECK(ids[{"clinicaltrials", "NCT04280705"}] == "LjPFoZz2");
  CHECK(ids[{"url", "https://covidtracker.example.org/data"}] == "6Nh3OadS");
  CHECK(ids[{"refseq", "NC_045512"}] == "86DuDZmD");

  std::set<std::string> distinct;
  for (auto& [k, id] : ids) {
    distinct.insert(id);
    CHECK(id.size() >= 6);
    CHECK(id.size() <= 12);
    for (char c : id) CHECK(std::isalnum(static_cast<unsigned char>(c)));
  }
  CHECK(distinct.size() == 6);

  // determinism across calls
  CHECK(citekit::assign_reference_ids(keys) == ids);

  CitationKey solo{"doi", "10.1/x"};
  auto one = citekit::assign_reference_ids({solo});
  CHECK(one[solo].size() >= 6);
}

TEST_CASE("property: normalize is idempotent over generated keys") {
  std::mt19937 rng(20210906);
  auto reg = test_registry();
  const std::vector<std::string> sources{"doi", "pubmed", "pmid", "arxiv", "clinicaltrials", "url", "raw"};
  std::uniform_int_distribution<size_t> pick(0, sources.size() - 1);
  std::uniform_int_distribution<int> len(1, 24);
  std::uniform_int_distribution<int> chr(0, 61);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  int checked = 0;
  for (int iter = 0; iter < 400; ++iter) {
    CitationKey k;
    k.source = sources[pick(rng)];
    if (k.source == "doi") {
      k.accession = "10.1371/";
      for (int i = 0, n = len(rng); i < n; ++i) k.accession.push_back(alphabet[chr(rng)]);
    } else if (k.source == "clinicaltrials") {
      k.accession = (iter % 2) ? "nct04280705" : "NCT00001234";
    } else if (k.source == "url") {
      k.accession = "https://Example.org/p%2fq";
      for (int i = 0, n = len(rng) % 6; i < n; ++i) k.accession.push_back(alphabet[chr(rng)]);
    } else {
      for (int i = 0, n = len(rng); i < n; ++i) k.accession.push_back(alphabet[chr(rng)]);
    }
    auto once = citekit::normalize_key(k);
    auto twice = citekit::normalize_key(once);
    CHECK(twice == once);
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("property: occurrences never overlap code or url spans") {
  std::mt19937 rng(42);
  auto reg = test_registry();
  std::uniform_int_distribution<int> coin(0, 3);
  int cases = 0;
  for (int iter = 0; iter < 250; ++iter) {
    std::string doc;
    std::vector<int> outside_markers;
    for (int piece = 0; piece < 8; ++piece) {
      switch (coin(rng)) {
        case 0:
          doc += "plain prose here ";
          break;
        case 1:
          doc += "`[@doi:10.9/code" + std::to_string(piece) + "]` ";
          break;
        case 2:
          doc += "https://h.org/[@doi:10.9/url" + std::to_string(piece) + "] ";
          break;
        default:
          doc += "[@doi:10.9/ok" + std::to_string(piece) + "] ";
          outside_markers.push_back(piece);
          break;
      }
    }
    auto occ = citekit::extract_citations(doc, "p.md", reg);
    REQUIRE(occ.size() == outside_markers.size());
    auto scan = mdscan::scan(doc);
    for (const auto& o : occ) {
      CHECK_FALSE(mdscan::overlaps_any(scan.code, o.span.begin, o.span.end));
      CHECK_FALSE(mdscan::overlaps_any(scan.urls, o.span.begin, o.span.end));
    }
    ++cases;
  }
  CHECK(cases == 250);
}
