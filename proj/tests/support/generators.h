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

#ifndef SCHOLIVIEW_TESTS_GENERATORS_H_
#define SCHOLIVIEW_TESTS_GENERATORS_H_

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "scholiview/keyphrase.h"
#include "scholiview/projection.h"
#include "scholiview/textprep.h"

namespace testgen {

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline scholiview::DenseMatrix random_matrix(Rng &rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> normal(0.0, 1.0);
  scholiview::DenseMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = normal(rng);
  }
  return m;
}

struct RandomGraph {
  std::vector<std::size_t> partition;          // part of each node
  std::vector<std::vector<double>> weights;    // weights[from][to]
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

// Multipartite graph with 2..6 parts. Some cross-part edges are missing and
// some nodes end up without outgoing weight.
inline RandomGraph random_multipartite_graph(Rng &rng, std::size_t max_nodes) {
  RandomGraph g;
  const std::size_t n = uniform_index(rng, 2, max_nodes);
  const std::size_t parts = uniform_index(rng, 2, std::min<std::size_t>(6, n));
  g.partition.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.partition[i] = i < parts ? i : uniform_index(rng, 0, parts - 1);
  g.weights.assign(n, std::vector<double>(n, 0.0));
  const double density = uniform_real(rng, 0.15, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || g.partition[i] == g.partition[j]) continue;
      if (uniform_real(rng, 0.0, 1.0) > density) continue;
      g.weights[i][j] = uniform_real(rng, 0.01, 3.0);
      g.edges.emplace_back(i, j);
    }
  }
  return g;
}

inline scholiview::WeightedDigraph to_digraph(const RandomGraph &g,
                                              const std::vector<std::pair<std::size_t, std::size_t>> &order) {
  scholiview::WeightedDigraph out(g.weights.size());
  for (auto [i, j] : order) out.set_weight(i, j, g.weights[i][j]);
  return out;
}

// Candidates over a small stem alphabet so that overlaps and exact ties in
// the linkage are common.
inline std::vector<scholiview::Candidate> random_candidates(Rng &rng, std::size_t max_count) {
  static const char *kStems[] = {"daten", "sort", "lauf", "zeit", "list", "baum", "graph", "knot"};
  const std::size_t n = uniform_index(rng, 1, max_count);
  const std::size_t alphabet = uniform_index(rng, 3, std::size(kStems));
  std::vector<std::size_t> positions(n * 3);
  std::iota(positions.begin(), positions.end(), 1);
  std::shuffle(positions.begin(), positions.end(), rng);
  std::vector<scholiview::Candidate> out;
  for (std::size_t c = 0; c < n; ++c) {
    scholiview::Candidate cand;
    const std::size_t len = uniform_index(rng, 1, 3);
    for (std::size_t k = 0; k < len; ++k) cand.stems.push_back(kStems[uniform_index(rng, 0, alphabet - 1)]);
    for (std::size_t k = 0; k < len; ++k) cand.surface_form += (k ? " " : "") + cand.stems[k];
    const std::size_t occ = uniform_index(rng, 1, 3);
    std::vector<std::size_t> mine(positions.begin() + static_cast<std::ptrdiff_t>(c * 3),
                                  positions.begin() + static_cast<std::ptrdiff_t>(c * 3 + occ));
    std::sort(mine.begin(), mine.end());
    for (auto p : mine) cand.occurrences.push_back({p, 0});
    out.push_back(std::move(cand));
  }
  return out;
}

// Pre-tagged document whose content words are drawn from a fixed pool and
// separated by function words.
inline scholiview::TaggedDocument random_document(Rng &rng, std::size_t segments, std::size_t max_runs) {
  static const char *kContent[] = {"Speicher", "Daten",   "Laufzeit", "Liste",    "Baum",
                                   "Graph",    "Knoten",  "Kante",    "Pfad",     "Suche",
                                   "Sortierung", "Zeiger", "Tabelle", "Schlüssel", "Wert"};
  static const char *kFunction[] = {"und", "die", "mit", "von", "in"};
  using scholiview::PosTag;
  static const PosTag kTags[] = {PosTag::kNoun, PosTag::kAdj, PosTag::kPropn, PosTag::kVerb};
  scholiview::TaggedDocument doc;
  std::size_t pos = 1;
  for (std::size_t s = 0; s < segments; ++s) {
    std::vector<scholiview::TaggedToken> seg;
    const std::size_t runs = uniform_index(rng, 1, max_runs);
    for (std::size_t r = 0; r < runs; ++r) {
      const std::size_t len = uniform_index(rng, 1, 2);
      for (std::size_t k = 0; k < len; ++k) {
        seg.push_back({kContent[uniform_index(rng, 0, std::size(kContent) - 1)],
                       kTags[uniform_index(rng, 0, std::size(kTags) - 1)], pos++});
      }
      seg.push_back({kFunction[uniform_index(rng, 0, std::size(kFunction) - 1)], PosTag::kDet, pos++});
    }
    doc.segments.push_back(std::move(seg));
  }
  return doc;
}

inline std::string read_bytes(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testgen

#endif  // SCHOLIVIEW_TESTS_GENERATORS_H_
