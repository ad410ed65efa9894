// Copyright 2026 The Scholiview Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "scholiview/utf8.h"

#include "doctest.h"

using namespace scholiview;

TEST_CASE("decode and encode round trip multibyte text") {
  std::string text = "Größe ∑ 😀";
  auto cps = utf8::decode(text);
  CHECK(cps.size() == 9);
  CHECK(cps[2] == U'ö');
  CHECK(cps[6] == U'∑');
  CHECK(cps[8] == U'\U0001F600');
  CHECK(utf8::encode(cps) == text);
  CHECK(utf8::length(text) == 9);
}

TEST_CASE("invalid bytes decode to the replacement character") {
  std::string bad = "a\xff" "b\xc3";
  auto cps = utf8::decode(bad);
  REQUIRE(cps.size() == 4);
  CHECK(cps[1] == 0xFFFD);
  CHECK(cps[3] == 0xFFFD);
}

TEST_CASE("lowercasing covers German and other Latin letters") {
  CHECK(utf8::to_lower("ÄÖÜ Straße") == "äöü straße");
  CHECK(utf8::to_lower("ŁÓDŹ") == "łódź");
  CHECK(utf8::to_lower("ΣΩ") == "σω");
  CHECK(utf8::to_lower("ДОМ") == "дом");
  CHECK(utf8::to_lower(U'ẞ') == U'ß');
  CHECK(utf8::is_upper(U'Ä'));
  CHECK_FALSE(utf8::is_upper(U'ä'));
}

TEST_CASE("character classes") {
  CHECK(utf8::is_space(U' '));
  CHECK(utf8::is_space(U' '));
  CHECK(utf8::is_punct(U','));
  CHECK(utf8::is_punct(U'–'));
  CHECK(utf8::is_punct(U'„'));
  CHECK(utf8::is_punct(U'«'));
  CHECK_FALSE(utf8::is_punct(U'ß'));
  CHECK(utf8::is_alnum(U'ß'));
  CHECK(utf8::is_alnum(U'7'));
  CHECK(utf8::trim("  \tLaufzeit \n") == "Laufzeit");
  CHECK(utf8::trim("   ").empty());
}
