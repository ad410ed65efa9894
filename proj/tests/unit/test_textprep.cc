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


#include "scholiview/textprep.h"
#include "scholiview/utf8.h"

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.h"

using namespace scholiview;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SCHOLIVIEW_TEST_FIXTURES;
const fs::path kData = SCHOLIVIEW_TEST_DATA;

using Tokens = std::vector<std::string>;

}  // namespace

TEST_CASE("tokenize splits punctuation into separate tokens") {
  CHECK(tokenize("Eigenwerte, Eigenvektoren") == Tokens{"Eigenwerte", ",", "Eigenvektoren"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("O(n log n)") == Tokens{"O", "(", "n", "log", "n", ")"});
  CHECK(tokenize("  \t\n ").empty());
  CHECK(tokenize("„Quick-Sort“ geht's...") == Tokens{"„", "Quick-Sort", "“", "geht's", ".", ".", "."});
  CHECK(tokenize("-x- a-") == Tokens{"-", "x", "-", "a", "-"});
  CHECK(tokenize("Größe:3") == Tokens{"Größe", ":", "3"});
}

TEST_CASE("tokens never contain whitespace") {
  testgen::Rng rng(5);
  const char32_t alphabet[] = {U'a', U'Z', U'ü', U' ', U'\t', U'\n', U' ', U',', U'-', U'\'', U'(', U'7', U'ß'};
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string text;
    for (std::size_t k = testgen::uniform_index(rng, 0, 30); k > 0; --k) {
      text.push_back(alphabet[testgen::uniform_index(rng, 0, std::size(alphabet) - 1)]);
    }
    std::string s = utf8::encode(text);
    for (const auto &tok : tokenize(s)) {
      CHECK_FALSE(tok.empty());
      for (char32_t c : utf8::decode(tok)) CHECK_FALSE(utf8::is_space(c));
    }
  }
}

TEST_CASE("parse_tagged reads slash format") {
  auto toks = parse_tagged("wenig/PRON Speicher/NOUN");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0] == TaggedToken{"wenig", PosTag::kPron, 1});
  CHECK(toks[1] == TaggedToken{"Speicher", PosTag::kNoun, 2});
  CHECK(parse_tagged("").empty());
  auto slash = parse_tagged("TCP/IP/NOUN");
  REQUIRE(slash.size() == 1);
  CHECK(slash[0] == TaggedToken{"TCP/IP", PosTag::kNoun, 1});
  auto offset = parse_tagged(",/. es/PRON", 10);
  CHECK(offset[0] == TaggedToken{",", PosTag::kPunct, 10});
  CHECK(offset[1].position == 11);
}

TEST_CASE("parse_tagged rejects malformed tokens") {
  CHECK_THROWS_AS(parse_tagged("Speicher"), TagFormatError);
  CHECK_THROWS_AS(parse_tagged("Speicher/NOMEN"), TagFormatError);
  CHECK_THROWS_AS(parse_tagged("/NOUN"), TagFormatError);
  CHECK_THROWS_AS(parse_tagged("Speicher/"), TagFormatError);
}

TEST_CASE("slash format round trip") {
  testgen::Rng rng(11);
  const char *surfaces[] = {"wenig", "Speicher", "TCP/IP", "a/b/c", "Größe", ",", "("};
  const PosTag tags[] = {PosTag::kNoun, PosTag::kVerb, PosTag::kPunct, PosTag::kX, PosTag::kPropn, PosTag::kSconj};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TaggedToken> toks;
    for (std::size_t k = 0, n = testgen::uniform_index(rng, 0, 12); k < n; ++k) {
      toks.push_back({surfaces[testgen::uniform_index(rng, 0, std::size(surfaces) - 1)],
                      tags[testgen::uniform_index(rng, 0, std::size(tags) - 1)], k + 1});
    }
    CHECK(parse_tagged(serialize_tagged(toks)) == toks);
  }
}

TEST_CASE("every tag name round-trips") {
  for (int t = 0; t <= static_cast<int>(PosTag::kX); ++t) {
    auto tag = static_cast<PosTag>(t);
    CHECK(parse_pos_tag(to_string(tag)) == tag);
  }
  CHECK(parse_pos_tag(".") == PosTag::kPunct);
  CHECK_FALSE(parse_pos_tag("noun").has_value());
}

TEST_CASE("fallback tagger order: lexicon, suffix rule, capitalization") {
  Lexicon lex{{"speicher", PosTag::kNoun}, {"und", PosTag::kCconj}};
  std::vector<SuffixRule> rules{{"e", PosTag::kAdj}, {"ung", PosTag::kNoun}};
  Tokens words{"Speicher", "schnelle", "xyzzy", "Quux", "UND", "Ordnung", "e"};
  auto tagged = tag_fallback(words, lex, rules);
  REQUIRE(tagged.size() == words.size());
  CHECK(tagged[0] == TaggedToken{"Speicher", PosTag::kNoun, 1});
  CHECK(tagged[1].tag == PosTag::kAdj);
  CHECK(tagged[2] == TaggedToken{"xyzzy", PosTag::kX, 3});
  CHECK(tagged[3].tag == PosTag::kNoun);
  CHECK(tagged[4].tag == PosTag::kCconj);
  CHECK(tagged[5].tag == PosTag::kNoun);
  CHECK(tagged[6].tag == PosTag::kX);
  for (std::size_t i = 0; i < tagged.size(); ++i) CHECK(tagged[i].position == i + 1);
}

TEST_CASE("fallback tagger over shipped data keeps length and positions") {
  Lexicon lex = load_lexicon_file(kData / "tagger" / "de_lexicon.tsv");
  auto rules = load_suffix_rules_file(kData / "tagger" / "de_suffix_rules.tsv");
  CHECK(lex.at("speichern") == PosTag::kVerb);
  CHECK(lex.at("und") == PosTag::kCconj);
  FallbackTagger tagger(lex, rules);
  auto toks = tagger.tag("Die Sortierung der Daten ist schnell.", 5);
  REQUIRE(toks.size() == 7);
  CHECK(toks.front().position == 5);
  CHECK(toks.back().position == 11);
  CHECK(toks[1].tag == PosTag::kNoun);
  CHECK(toks[6].tag == PosTag::kPunct);
}

TEST_CASE("lexicon and rule files reject bad lines") {
  std::istringstream no_tab("speicher NOUN\n");
  CHECK_THROWS_AS(load_lexicon(no_tab), TagFormatError);
  std::istringstream bad_tag("speicher\tNOMEN\n");
  CHECK_THROWS_AS(load_lexicon(bad_tag), TagFormatError);
  std::istringstream ok("# comment\n\nung\tNOUN\nlich\tADJ\n");
  auto rules = load_suffix_rules(ok);
  REQUIRE(rules.size() == 2);
  CHECK(rules[1].suffix == "lich");
}

TEST_CASE("tagged documents keep one global position count") {
  auto doc = parse_tagged_document("a/NOUN b/VERB\n\nc/ADJ\n");
  REQUIRE(doc.segments.size() == 3);
  CHECK(doc.segments[1].empty());
  CHECK(doc.segments[2][0].position == 3);
  CHECK(doc.token_count() == 3);
  CHECK(parse_tagged_document("").segments.empty());
  CHECK(parse_tagged_document("a/NOUN").segments.size() == 1);

  PreTaggedReader reader;
  std::vector<std::string> texts{"x/NOUN y/NOUN", "z/VERB"};
  auto tagged = tag_segments(reader, texts);
  CHECK(tagged.segments[1][0].position == 3);
}

TEST_CASE("stemmer matches the hand-derived table") {
  std::ifstream in(kFixtures / "stemmer.tsv");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string lang, word, expected;
    std::getline(fields, lang, '\t');
    std::getline(fields, word, '\t');
    std::getline(fields, expected, '\t');
    CAPTURE(word);
    CHECK(stem(word, lang) == expected);
    ++rows;
  }
  CHECK(rows >= 20);
}

TEST_CASE("stemming is single-pass and therefore not always idempotent") {
  // One pass strips only the first matching suffix, so a stem that itself
  // ends in a listed suffix shrinks again on a second call.
  struct Row {
    const char *word, *once, *twice;
  };
  const Row rows[] = {
      {"Faktorisierungen", "faktorisier", "faktorisi"},
      {"Sortierung", "sortier", "sorti"},
      {"Änderung", "änder", "änd"},
      {"gestern", "gester", "gest"},
      {"Rechner", "rechn", "rech"},
      {"diese", "dies", "die"},
      {"speichern", "speicher", "speich"},
  };
  for (const auto &r : rows) {
    CAPTURE(r.word);
    CHECK(stem(r.word, "de") == r.once);
    CHECK(stem(r.once, "de") == r.twice);
  }
  for (const char *w : {"Übungen", "Laufzeit", "Algorithmus", "Liste", "Baum"}) {
    std::string once = stem(w, "de");
    CHECK(stem(once, "de") == once);
  }
}

TEST_CASE("stem basics") {
  CHECK(stem("Sortierverfahren", "de") == "sortierverfahr");
  CHECK(stem("ab", "de") == "ab");
  CHECK(stem("Bäume", "xx") == "bäume");
}

TEST_CASE("stopwords are case-insensitive") {
  StopwordList de = load_stopwords_file(kData / "stopwords" / "de.txt", "de");
  CHECK(is_stopword("und", de));
  CHECK(is_stopword("UND", de));
  CHECK_FALSE(is_stopword("Laufzeit", de));
  for (const auto &w : de.words) {
    CHECK(w == utf8::to_lower(w));
    CHECK(w.find_first_of(" \t") == std::string::npos);
  }
  std::istringstream in("Der # article\n\n# comment\nUnd\n");
  StopwordList small = load_stopwords(in, "de");
  CHECK(small.words == std::unordered_set<std::string>{"der", "und"});
}
