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

// Pretrained word vectors in the textual ".vec" layout, with out-of-vocabulary
// words composed from character tri-gram centroids.

#ifndef SCHOLIVIEW_EMBEDDING_H_
#define SCHOLIVIEW_EMBEDDING_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scholiview/error.h"

namespace scholiview {

struct WordVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  bool operator==(const WordVector &) const = default;
};

class FormatError : public LineError {
 public:
  FormatError(std::size_t line, const std::string &reason)
      : LineError("vector file format error", line, reason) {}
};

class OovUnresolvable : public Error {
 public:
  explicit OovUnresolvable(const std::string &word)
      : Error("cannot embed \"" + word + "\": no known tri-gram"), word_(word) {}
  const std::string &word() const { return word_; }

 private:
  std::string word_;
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("cosine of a zero vector is undefined") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

inline constexpr std::size_t kDefaultMaxVocab = 200000;
inline constexpr std::size_t kTrigram = 3;

// Wraps the word in '<' '>' and returns every length-n window over code
// points, in order, duplicates kept. Requires a non-empty word and n >= 2.
std::vector<std::string> char_ngrams(std::string_view word, std::size_t n = kTrigram);

// Immutable after construction. Vocabulary rows are stored as float, the
// tri-gram centroids as double.
class EmbeddingTable {
 public:
  // Rows keep their order; a repeated word keeps its first row. Throws
  // FormatError if a row's length differs from `dimension`.
  EmbeddingTable(std::size_t dimension,
                 std::vector<std::pair<std::string, std::vector<float>>> rows);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string> &words() const { return words_; }

  // Exact, case-sensitive lookup.
  std::optional<std::span<const float>> find(std::string_view word) const;
  // Mean vector of all vocabulary words whose tri-gram set contains `gram`.
  std::optional<std::span<const double>> centroid(std::string_view gram) const;
  std::size_t centroid_count() const { return centroid_index_.size(); }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<float> rows_;  // words_.size() x dimension_
  std::unordered_map<std::string, std::size_t> word_index_;
  std::vector<double> centroids_;  // centroid_index_.size() x dimension_
  std::unordered_map<std::string, std::size_t> centroid_index_;
};

// Header "<count> <dim>" followed by "word v1 ... vdim" rows. Loads at most
// min(count, max_vocab) rows; nullopt means no cap.
EmbeddingTable load_vectors(std::istream &in,
                            std::optional<std::size_t> max_vocab = kDefaultMaxVocab);
EmbeddingTable load_vectors_file(const std::filesystem::path &path,
                                 std::optional<std::size_t> max_vocab = kDefaultMaxVocab);

// Stored row for `word`, retrying lowercased; otherwise the mean of the
// centroids of those of its tri-grams that are indexed.
WordVector embed(const EmbeddingTable &table, std::string_view word);

double cosine(const WordVector &u, const WordVector &v);

}  // namespace scholiview

#endif  // SCHOLIVIEW_EMBEDDING_H_
