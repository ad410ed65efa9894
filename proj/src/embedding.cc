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

#include "scholiview/embedding.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <stdexcept>

#include "scholiview/utf8.h"

namespace scholiview {

std::vector<std::string> char_ngrams(std::string_view word, std::size_t n) {
  if (word.empty()) throw std::invalid_argument("char_ngrams: empty word");
  if (n < 2) throw std::invalid_argument("char_ngrams: n must be >= 2");
  std::u32string wrapped = U"<" + utf8::decode(word) + U">";
  std::vector<std::string> grams;
  if (wrapped.size() < n) return grams;
  grams.reserve(wrapped.size() - n + 1);
  for (std::size_t i = 0; i + n <= wrapped.size(); ++i) {
    grams.push_back(utf8::encode(std::u32string_view(wrapped).substr(i, n)));
  }
  return grams;
}

EmbeddingTable::EmbeddingTable(std::size_t dimension,
                               std::vector<std::pair<std::string, std::vector<float>>> rows)
    : dimension_(dimension) {
  if (dimension_ == 0) throw FormatError(0, "dimension must be positive");
  words_.reserve(rows.size());
  rows_.reserve(rows.size() * dimension_);
  for (auto &[word, values] : rows) {
    if (values.size() != dimension_) {
      throw FormatError(0, "row for \"" + word + "\" has " + std::to_string(values.size()) +
                               " components, expected " + std::to_string(dimension_));
    }
    for (float v : values) {
      if (!std::isfinite(v)) throw FormatError(0, "row for \"" + word + "\" is not finite");
    }
    if (word.empty() || word_index_.contains(word)) continue;
    word_index_.emplace(word, words_.size());
    words_.push_back(std::move(word));
    rows_.insert(rows_.end(), values.begin(), values.end());
  }

  std::vector<std::size_t> members;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto grams = char_ngrams(words_[w], kTrigram);
    std::set<std::string> unique(grams.begin(), grams.end());
    const float *row = rows_.data() + w * dimension_;
    for (const std::string &g : unique) {
      auto [it, fresh] = centroid_index_.emplace(g, members.size());
      if (fresh) {
        members.push_back(0);
        centroids_.resize(centroids_.size() + dimension_, 0.0);
      }
      double *sum = centroids_.data() + it->second * dimension_;
      for (std::size_t d = 0; d < dimension_; ++d) sum[d] += row[d];
      ++members[it->second];
    }
  }
  for (std::size_t c = 0; c < members.size(); ++c) {
    double *sum = centroids_.data() + c * dimension_;
    for (std::size_t d = 0; d < dimension_; ++d) sum[d] /= static_cast<double>(members[c]);
  }
}

std::optional<std::span<const float>> EmbeddingTable::find(std::string_view word) const {
  auto it = word_index_.find(std::string(word));
  if (it == word_index_.end()) return std::nullopt;
  return std::span<const float>(rows_.data() + it->second * dimension_, dimension_);
}

std::optional<std::span<const double>> EmbeddingTable::centroid(std::string_view gram) const {
  auto it = centroid_index_.find(std::string(gram));
  if (it == centroid_index_.end()) return std::nullopt;
  return std::span<const double>(centroids_.data() + it->second * dimension_, dimension_);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::size_t parse_count(std::string_view field, std::size_t line, const char *what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError(line, std::string("header ") + what + " is not an integer");
  }
  return value;
}

}  // namespace

EmbeddingTable load_vectors(std::istream &in, std::optional<std::size_t> max_vocab) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(1, "missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_fields(line);
  if (header.size() != 2) throw FormatError(1, "header must be \"<count> <dim>\"");
  std::size_t count = parse_count(header[0], 1, "count");
  std::size_t dim = parse_count(header[1], 1, "dimension");
  if (dim == 0) throw FormatError(1, "dimension must be positive");
  std::size_t limit = max_vocab ? std::min(count, *max_vocab) : count;

  std::vector<std::pair<std::string, std::vector<float>>> rows;
  rows.reserve(limit);
  std::size_t line_no = 1;
  while (rows.size() < limit) {
    if (!std::getline(in, line)) {
      throw FormatError(line_no, "expected " + std::to_string(limit) + " rows, found " +
                                     std::to_string(rows.size()));
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_fields(line);
    if (fields.empty()) throw FormatError(line_no, "empty row");
    if (fields.size() - 1 != dim) {
      throw FormatError(line_no, "expected " + std::to_string(dim) + " components, found " +
                                     std::to_string(fields.size() - 1));
    }
    std::vector<float> values(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      std::string_view f = fields[d + 1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), values[d]);
      if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(values[d])) {
        throw FormatError(line_no, "component " + std::to_string(d + 1) + " (\"" +
                                       std::string(f) + "\") is not a finite number");
      }
    }
    rows.emplace_back(std::string(fields[0]), std::move(values));
  }
  return EmbeddingTable(dim, std::move(rows));
}

EmbeddingTable load_vectors_file(const std::filesystem::path &path,
                                 std::optional<std::size_t> max_vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open vector file " + path.string());
  return load_vectors(in, max_vocab);
}

WordVector embed(const EmbeddingTable &table, std::string_view word) {
  if (word.empty()) throw std::invalid_argument("embed: empty word");
  auto row = table.find(word);
  if (!row) row = table.find(utf8::to_lower(word));
  if (row) return WordVector{{row->begin(), row->end()}};

  WordVector mean{std::vector<double>(table.dimension(), 0.0)};
  std::size_t hits = 0;
  for (const std::string &gram : char_ngrams(word, kTrigram)) {
    auto c = table.centroid(gram);
    if (!c) continue;
    for (std::size_t d = 0; d < mean.values.size(); ++d) mean.values[d] += (*c)[d];
    ++hits;
  }
  if (hits == 0) throw OovUnresolvable(std::string(word));
  for (double &v : mean.values) v /= static_cast<double>(hits);
  return mean;
}

double cosine(const WordVector &u, const WordVector &v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw ZeroVector();
  double c = dot / (std::sqrt(nu) * std::sqrt(nv));
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace scholiview
