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

#ifndef SCHOLIVIEW_TEXTPREP_H_
#define SCHOLIVIEW_TEXTPREP_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scholiview/error.h"

namespace scholiview {

// Universal part-of-speech tags. CONJ and PRT are the older universal
// tagset spellings and are kept so pre-tagged files from either version load.
enum class PosTag {
  kAdj,
  kAdp,
  kAdv,
  kAux,
  kCconj,
  kConj,
  kDet,
  kIntj,
  kNoun,
  kNum,
  kPart,
  kPrt,
  kPron,
  kPropn,
  kPunct,
  kSconj,
  kSym,
  kVerb,
  kX,
};

std::string_view to_string(PosTag tag);
// "." is read as PUNCT. Returns nullopt for anything unknown.
std::optional<PosTag> parse_pos_tag(std::string_view text);

struct TaggedToken {
  std::string surface;
  PosTag tag = PosTag::kX;
  std::size_t position = 1;  // 1-based document offset

  bool operator==(const TaggedToken &) const = default;
};

class TagFormatError : public Error {
 public:
  explicit TagFormatError(const std::string &what) : Error("tag format error: " + what) {}
};

// Splits on whitespace and emits every punctuation character as its own
// token. A hyphen or apostrophe between two letters or digits stays inside
// the word ("Quick-Sort", "geht's").
std::vector<std::string> tokenize(std::string_view text);

// Reads "surface/TAG surface/TAG ..." splitting each token on its last
// slash. Positions start at first_position.
std::vector<TaggedToken> parse_tagged(std::string_view text, std::size_t first_position = 1);
std::string serialize_tagged(std::span<const TaggedToken> tokens);

struct SuffixRule {
  std::string suffix;  // lowercase
  PosTag tag;
};

// Keys are lowercased.
using Lexicon = std::unordered_map<std::string, PosTag>;

// "word<TAB>TAG" per line; blank lines and '#' comments skipped. Other
// malformed lines and unknown tags throw TagFormatError.
Lexicon load_lexicon(std::istream &in);
Lexicon load_lexicon_file(const std::filesystem::path &path);
// "suffix<TAB>TAG" per line, order preserved.
std::vector<SuffixRule> load_suffix_rules(std::istream &in);
std::vector<SuffixRule> load_suffix_rules_file(const std::filesystem::path &path);

// Lexicon lookup (case-insensitive), then the first matching suffix rule,
// then NOUN for capitalized words and X otherwise.
std::vector<TaggedToken> tag_fallback(std::span<const std::string> tokens, const Lexicon &lexicon,
                                      std::span<const SuffixRule> suffix_rules,
                                      std::size_t first_position = 1);

// Text-in, tagged-tokens-out. Positions are offset by first_position so a
// multi-segment document can keep one global numbering.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual std::vector<TaggedToken> tag(std::string_view text, std::size_t first_position) const = 0;
};

// Text that already carries tags in slash format.
class PreTaggedReader final : public Tagger {
 public:
  std::vector<TaggedToken> tag(std::string_view text, std::size_t first_position) const override {
    return parse_tagged(text, first_position);
  }
};

class FallbackTagger final : public Tagger {
 public:
  FallbackTagger(Lexicon lexicon, std::vector<SuffixRule> rules)
      : lexicon_(std::move(lexicon)), rules_(std::move(rules)) {}

  std::vector<TaggedToken> tag(std::string_view text, std::size_t first_position) const override;

 private:
  Lexicon lexicon_;
  std::vector<SuffixRule> rules_;
};

// A transcript as one token list per time segment. Positions run across
// segments without restarting.
struct TaggedDocument {
  std::vector<std::vector<TaggedToken>> segments;

  std::size_t token_count() const;
};

// Tags each segment text in order, continuing the position count.
TaggedDocument tag_segments(const Tagger &tagger, std::span<const std::string> segment_texts);

// Slash-format transcript with one line per time segment (blank line for an
// empty segment). A single trailing newline does not start a new segment.
TaggedDocument parse_tagged_document(std::string_view text);

// Lowercases and strips the first matching suffix of a fixed per-language
// list, leaving at least three characters. Unknown languages are only
// lowercased.
std::string stem(std::string_view word, std::string_view language);

struct StopwordList {
  std::string language;
  std::unordered_set<std::string> words;  // lowercase
};

// One word per line; '#' starts a comment. Entries are lowercased.
StopwordList load_stopwords(std::istream &in, std::string language);
StopwordList load_stopwords_file(const std::filesystem::path &path, std::string language);

bool is_stopword(std::string_view token, const StopwordList &list);

}  // namespace scholiview

#endif  // SCHOLIVIEW_TEXTPREP_H_
