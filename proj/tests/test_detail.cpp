#include <catch2/catch_amalgamated.hpp>

#include "livingdoc/detail/io.hpp"
#include "livingdoc/detail/json_io.hpp"
#include "livingdoc/detail/sha256.hpp"
#include "livingdoc/detail/strings.hpp"
#include "livingdoc/detail/unicode.hpp"
#include "livingdoc/detail/xml.hpp"

using namespace livingdoc;

TEST_CASE("sha256 matches FIPS test vectors") {
  CHECK(detail::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(detail::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(detail::sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  // incremental updates agree with one-shot
  detail::Sha256 h;
  std::string million(1000, 'a');
  for (int i = 0; i < 1000; ++i) h.update(million.data(), million.size());
  auto d = h.finish();
  std::string hex;
  for (uint8_t b : d) {
    static const char* x = "0123456789abcdef";
    hex.push_back(x[b >> 4]);
    hex.push_back(x[b & 0xf]);
  }
  CHECK(hex == "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("base62 encoding matches the hashlib/int oracle") {
  // python: int.from_bytes(sha256(b"abc").digest(),'big') in base62
  CHECK(detail::sha256_base62("abc") == "iDUK5mbjE0q8kxKur8d0acwb3mlMY7nzH5i6WpR5bav");
  uint8_t zero[4] = {0, 0, 0, 0};
  CHECK(detail::base62(zero, 4) == "0");
  uint8_t one[2] = {0, 61};
  CHECK(detail::base62(one, 2) == "z");
  uint8_t sixty_two[1] = {62};
  CHECK(detail::base62(sixty_two, 1) == "10");
}

TEST_CASE("string helpers") {
  CHECK(detail::trim("  a b \n") == "a b");
  CHECK(detail::to_lower("AbC") == "abc");
  CHECK(detail::split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(detail::replace_all("x{ac}y{ac}", "{ac}", "Z") == "xZyZ");
  CHECK(detail::format_double(98) == "98");
  CHECK(detail::format_double(0.5) == "0.5");
  CHECK(detail::format_fixed(1.0 / 3.0, 2) == "0.33");
  CHECK(detail::parse_int("120").value() == 120);
  CHECK_FALSE(detail::parse_int("12x").has_value());
}

TEST_CASE("canonical json sorts keys and ends with newline") {
  detail::json j;
  j["zeta"] = 1;
  j["alpha"] = "x";
  std::string s = detail::canonical_json(j);
  CHECK(s == "{\n  \"alpha\": \"x\",\n  \"zeta\": 1\n}\n");
}

TEST_CASE("utf8 decode/encode round trip and folding") {
  std::string cafe = "caf\xc3\xa9";  // café composed
  size_t i = 3;
  CHECK(detail::decode_utf8(cafe, i) == 0xE9);
  std::string decomposed = "cafe\xcc\x81";  // e + combining acute
  CHECK(detail::nfc_latin(decomposed) == cafe);
  CHECK(detail::nfc_latin(cafe) == cafe);  // idempotent on composed input
  CHECK(detail::fold_lower_utf8("CAF\xc3\x89") == cafe);
  CHECK(detail::fold_lower_utf8("\xc5\xa0") == "\xc5\xa1");  // Š → š (Ext-A)
  CHECK(detail::is_letter_cp(U'é'));
  CHECK_FALSE(detail::is_letter_cp(U'7'));
}

TEST_CASE("xml extraction") {
  const std::string xml = R"(<?xml version="1.0"?>
<clinical_study rank="1">
  <id_info><nct_id>NCT04280705</nct_id></id_info>
  <official_title>A &amp; B study</official_title>
  <sponsors>
    <lead_sponsor><agency>NIAID</agency></lead_sponsor>
  </sponsors>
  <overall_official><last_name>One Person</last_name></overall_official>
  <overall_official><last_name>Two Person</last_name></overall_official>
  <brief_summary><textblock>
    Line one.
    Line two.
  </textblock></brief_summary>
  <empty/>
</clinical_study>)";
  CHECK(detail::xml_text(xml, "clinical_study.official_title").value() == "A & B study");
  CHECK(detail::xml_text(xml, "sponsors.lead_sponsor.agency").value() == "NIAID");
  CHECK(detail::xml_text(xml, "brief_summary.textblock").value() == "Line one. Line two.");
  CHECK_FALSE(detail::xml_text(xml, "no_such").has_value());
  auto officials = detail::xml_texts(xml, "clinical_study", "last_name");
  REQUIRE(officials.size() == 2);
  CHECK(officials[0] == "One Person");
  CHECK(officials[1] == "Two Person");
  CHECK(detail::xml_unescape("&lt;x&gt; &#65;&#x42;") == "<x> AB");
  // nested same-name tags
  const std::string nested = "<a><a>inner</a>tail</a>";
  auto r = detail::xml_find(nested, "a");
  REQUIRE(r.has_value());
  CHECK(nested.substr(r->begin, r->end - r->begin) == "<a>inner</a>tail");
}

TEST_CASE("glob expansion matches wildcard patterns") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "livingdoc-glob-test";
  fs::create_directories(dir);
  detail::write_file(dir / "a.json", "{}");
  detail::write_file(dir / "b.json", "{}");
  detail::write_file(dir / "c.txt", "");
  auto matched = detail::expand_glob(dir / "*.json");
  REQUIRE(matched.size() == 2);
  CHECK(matched[0].filename() == "a.json");
  CHECK(matched[1].filename() == "b.json");
  CHECK(detail::expand_glob(dir / "a.json").size() == 1);
  CHECK(detail::expand_glob(dir / "missing.json").empty());
  fs::remove_all(dir);
}
