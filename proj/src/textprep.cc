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

#include <array>
#include <fstream>
#include <istream>
#include <utility>

#include "scholiview/utf8.h"

namespace scholiview {

namespace {

constexpr std::array<std::pair<std::string_view, PosTag>, 19> kTagNames = {{
    {"ADJ", PosTag::kAdj},     {"ADP", PosTag::kAdp},     {"ADV", PosTag::kAdv},
    {"AUX", PosTag::kAux},     {"CCONJ", PosTag::kCconj}, {"CONJ", PosTag::kConj},
    {"DET", PosTag::kDet},     {"INTJ", PosTag::kIntj},   {"NOUN", PosTag::kNoun},
    {"NUM", PosTag::kNum},     {"PART", PosTag::kPart},   {"PRT", PosTag::kPrt},
    {"PRON", PosTag::kPron},   {"PROPN", PosTag::kPropn}, {"PUNCT", PosTag::kPunct},
    {"SCONJ", PosTag::kSconj}, {"SYM", PosTag::kSym},     {"VERB", PosTag::kVerb},
    {"X", PosTag::kX},
}};

bool is_joiner(char32_t cp) { return cp == U'-' || cp == U'\'' || cp == 0x2019; }

// Splits `line` at the first tab. Returns false for blank/comment lines.
// False for blank and comment lines; throws on anything else without a
// "key<TAB>TAG" shape.
bool split_tab_line(std::string_view line, std::string_view what, std::size_t line_no, std::string &left,
                    std::string &right) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string trimmed = utf8::trim(line);
  if (trimmed.empty() || trimmed[0] == '#') return false;
  auto tab = line.find('\t');
  if (tab != std::string_view::npos) {
    left = utf8::trim(line.substr(0, tab));
    right = utf8::trim(line.substr(tab + 1));
  }
  if (tab == std::string_view::npos || left.empty() || right.empty()) {
    throw TagFormatError(std::string(what) + " at line " + std::to_string(line_no) + ": expected key<TAB>TAG");
  }
  return true;
}

std::ifstream open_or_throw(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string_view to_string(PosTag tag) {
  for (const auto &[name, t] : kTagNames) {
    if (t == tag) return name;
  }
  return "X";
}

std::optional<PosTag> parse_pos_tag(std::string_view text) {
  if (text == ".") return PosTag::kPunct;
  for (const auto &[name, t] : kTagNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::u32string cps = utf8::decode(text);
  std::vector<std::string> tokens;
  std::u32string word;
  auto flush = [&] {
    if (!word.empty()) {
      tokens.push_back(utf8::encode(word));
      word.clear();
    }
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    if (utf8::is_space(cp)) {
      flush();
    } else if (utf8::is_punct(cp)) {
      bool inner = is_joiner(cp) && !word.empty() && utf8::is_alnum(word.back()) &&
                   i + 1 < cps.size() && utf8::is_alnum(cps[i + 1]);
      if (inner) {
        word.push_back(cp);
      } else {
        flush();
        tokens.push_back(utf8::encode(std::u32string(1, cp)));
      }
    } else {
      word.push_back(cp);
    }
  }
  flush();
  return tokens;
}

std::vector<TaggedToken> parse_tagged(std::string_view text, std::size_t first_position) {
  std::vector<TaggedToken> out;
  std::u32string cps = utf8::decode(text);
  std::size_t i = 0;
  std::size_t position = first_position;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_space(cps[i])) ++i;
    if (i == cps.size()) break;
    std::size_t start = i;
    while (i < cps.size() && !utf8::is_space(cps[i])) ++i;
    std::string token = utf8::encode(std::u32string_view(cps).substr(start, i - start));
    auto slash = token.rfind('/');
    if (slash == std::string::npos) {
      throw TagFormatError("token \"" + token + "\" has no '/TAG' suffix");
    }
    if (slash == 0) throw TagFormatError("token \"" + token + "\" has an empty surface");
    std::string_view tag_text = std::string_view(token).substr(slash + 1);
    auto tag = parse_pos_tag(tag_text);
    if (!tag) {
      throw TagFormatError("unknown tag \"" + std::string(tag_text) + "\" in token \"" + token +
                           "\"");
    }
    out.push_back({token.substr(0, slash), *tag, position++});
  }
  return out;
}

std::string serialize_tagged(std::span<const TaggedToken> tokens) {
  std::string out;
  for (const auto &t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
    out.push_back('/');
    out += to_string(t.tag);
  }
  return out;
}

Lexicon load_lexicon(std::istream &in) {
  Lexicon lexicon;
  std::string line;
  std::string word;
  std::string tag_text;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_tab_line(line, "lexicon", line_no, word, tag_text)) continue;
    auto tag = parse_pos_tag(tag_text);
    if (!tag) {
      throw TagFormatError("lexicon at line " + std::to_string(line_no) + ": unknown tag \"" + tag_text + "\"");
    }
    lexicon.emplace(utf8::to_lower(word), *tag);
  }
  return lexicon;
}

Lexicon load_lexicon_file(const std::filesystem::path &path) {
  auto in = open_or_throw(path);
  return load_lexicon(in);
}

std::vector<SuffixRule> load_suffix_rules(std::istream &in) {
  std::vector<SuffixRule> rules;
  std::string line;
  std::string suffix;
  std::string tag_text;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_tab_line(line, "suffix rules", line_no, suffix, tag_text)) continue;
    auto tag = parse_pos_tag(tag_text);
    if (!tag) {
      throw TagFormatError("suffix rules at line " + std::to_string(line_no) + ": unknown tag \"" + tag_text + "\"");
    }
    rules.push_back({utf8::to_lower(suffix), *tag});
  }
  return rules;
}

std::vector<SuffixRule> load_suffix_rules_file(const std::filesystem::path &path) {
  auto in = open_or_throw(path);
  return load_suffix_rules(in);
}

std::vector<TaggedToken> tag_fallback(std::span<const std::string> tokens, const Lexicon &lexicon,
                                      std::span<const SuffixRule> suffix_rules,
                                      std::size_t first_position) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  std::size_t position = first_position;
  for (const std::string &token : tokens) {
    std::string lower = utf8::to_lower(token);
    PosTag tag = PosTag::kX;
    if (auto it = lexicon.find(lower); it != lexicon.end()) {
      tag = it->second;
    } else {
      bool matched = false;
      for (const auto &rule : suffix_rules) {
        if (lower.size() > rule.suffix.size() && lower.ends_with(rule.suffix)) {
          tag = rule.tag;
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::u32string cps = utf8::decode(token);
        if (!cps.empty() && utf8::is_upper(cps.front())) tag = PosTag::kNoun;
      }
    }
    out.push_back({token, tag, position++});
  }
  return out;
}

std::vector<TaggedToken> FallbackTagger::tag(std::string_view text,
                                             std::size_t first_position) const {
  auto tokens = tokenize(text);
  return tag_fallback(tokens, lexicon_, rules_, first_position);
}

std::size_t TaggedDocument::token_count() const {
  std::size_t n = 0;
  for (const auto &seg : segments) n += seg.size();
  return n;
}

TaggedDocument tag_segments(const Tagger &tagger, std::span<const std::string> segment_texts) {
  TaggedDocument doc;
  std::size_t next = 1;
  for (const std::string &text : segment_texts) {
    doc.segments.push_back(tagger.tag(text, next));
    next += doc.segments.back().size();
  }
  return doc;
}

TaggedDocument parse_tagged_document(std::string_view text) {
  TaggedDocument doc;
  if (text.empty()) return doc;
  if (text.back() == '\n') text.remove_suffix(1);
  std::size_t next = 1;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = text.find('\n', begin);
    std::string_view line = text.substr(begin, end == std::string_view::npos ? text.npos : end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    doc.segments.push_back(parse_tagged(line, next));
    next += doc.segments.back().size();
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return doc;
}

std::string stem(std::string_view word, std::string_view language) {
  static const std::array<std::u32string_view, 9> kGerman = {
      U"ungen", U"ung", U"heit", U"keit", U"en", U"er", U"e", U"n", U"s"};
  static const std::array<std::u32string_view, 5> kEnglish = {U"ing", U"edly", U"ed", U"es",
                                                              U"s"};
  constexpr std::size_t kMinStem = 3;

  std::u32string cps;
  for (char32_t cp : utf8::decode(word)) cps.push_back(utf8::to_lower(cp));

  std::span<const std::u32string_view> suffixes;
  if (language == "de") {
    suffixes = kGerman;
  } else if (language == "en") {
    suffixes = kEnglish;
  }
  for (std::u32string_view suffix : suffixes) {
    if (cps.size() >= suffix.size() + kMinStem && std::u32string_view(cps).ends_with(suffix)) {
      cps.resize(cps.size() - suffix.size());
      break;
    }
  }
  return utf8::encode(cps);
}

StopwordList load_stopwords(std::istream &in, std::string language) {
  StopwordList list{std::move(language), {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string word = utf8::trim(line);
    if (word.empty()) continue;
    for (char32_t cp : utf8::decode(word)) {
      if (utf8::is_space(cp)) throw LineError("stopword list", line_no, "entry contains whitespace");
    }
    list.words.insert(utf8::to_lower(word));
  }
  return list;
}

StopwordList load_stopwords_file(const std::filesystem::path &path, std::string language) {
  auto in = open_or_throw(path);
  return load_stopwords(in, std::move(language));
}

bool is_stopword(std::string_view token, const StopwordList &list) {
  return list.words.contains(utf8::to_lower(token));
}

}  // namespace scholiview
