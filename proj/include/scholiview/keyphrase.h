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

// MultipartiteRank keyphrase extraction.
//
// Candidates are maximal runs of content-tagged, non-stopword tokens. They
// are grouped into topics by average-linkage agglomerative clustering over
// stem-set overlap, joined into a multipartite graph whose edges only cross
// topics (weighted by reciprocal token distance), and the first-occurring
// candidate of each topic has its incoming edges boosted by alpha * e^(1/p).
// Weighted PageRank then scores every candidate, and each time segment keeps
// its top_k candidates.

#ifndef SCHOLIVIEW_KEYPHRASE_H_
#define SCHOLIVIEW_KEYPHRASE_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "scholiview/error.h"
#include "scholiview/textprep.h"

namespace scholiview {

enum class Linkage { kAverage };

std::string_view to_string(Linkage linkage);

// The clustering threshold commonly documented for this algorithm family;
// the default below is the one used for lecture transcripts.
inline constexpr double kAlternativeClusterThreshold = 0.25;
inline constexpr std::size_t kMaxCandidateTokens = 5;
// Similarities closer than this are treated as equal when picking a merge.
inline constexpr double kSimilarityTieEpsilon = 1e-12;

struct RankConfig {
  double alpha = 1.0;
  double cluster_threshold = 0.4;
  Linkage linkage = Linkage::kAverage;
  std::size_t top_k = 20;
  double damping = 0.85;
  double pagerank_tol = 1e-6;
  std::size_t pagerank_max_iters = 100;
  std::set<PosTag> allowed_tags{PosTag::kNoun, PosTag::kAdj, PosTag::kPropn, PosTag::kVerb};

  // Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;

  bool operator==(const RankConfig &) const = default;
};

using CandidateId = std::size_t;

struct Occurrence {
  std::size_t first_token_position = 1;
  std::size_t segment_index = 0;

  bool operator==(const Occurrence &) const = default;
};

struct Candidate {
  std::string surface_form;        // first-seen spelling, tokens joined by ' '
  std::vector<std::string> stems;  // one per token
  std::vector<Occurrence> occurrences;

  std::size_t first_position() const { return occurrences.front().first_token_position; }

  bool operator==(const Candidate &) const = default;
};

struct Topic {
  std::vector<CandidateId> members;  // ascending
  CandidateId representative = 0;    // earliest first occurrence

  bool operator==(const Topic &) const = default;
};

// Dense directed graph over candidate ids. Self-edges are rejected.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(std::size_t nodes = 0)
      : n_(nodes), weights_(nodes * nodes, 0.0), present_(nodes * nodes, 0) {}

  std::size_t size() const { return n_; }
  bool has_edge(CandidateId from, CandidateId to) const { return present_[from * n_ + to] != 0; }
  // 0 when there is no edge.
  double weight(CandidateId from, CandidateId to) const { return weights_[from * n_ + to]; }
  void set_weight(CandidateId from, CandidateId to, double w);
  double out_weight(CandidateId from) const;
  std::size_t edge_count() const;

  bool operator==(const WeightedDigraph &) const = default;

 private:
  std::size_t n_;
  std::vector<double> weights_;
  std::vector<unsigned char> present_;
};

class DegenerateGraph : public Error {
 public:
  explicit DegenerateGraph(std::size_t topics)
      : Error("multipartite graph needs at least 2 topics, got " + std::to_string(topics)) {}
};

struct KeyphraseResult {
  struct Entry {
    std::string surface_form;
    double score = 0.0;
    bool operator==(const Entry &) const = default;
  };
  struct Segment {
    std::size_t segment_index = 0;
    std::vector<Entry> keyphrases;  // score non-increasing, size <= top_k
    bool operator==(const Segment &) const = default;
  };
  std::vector<Segment> per_segment;

  bool operator==(const KeyphraseResult &) const = default;
};

// Candidates in order of first occurrence. Stems use the stopword list's
// language.
std::vector<Candidate> select_candidates(const TaggedDocument &doc, const RankConfig &config,
                                         const StopwordList &stopwords);

// Jaccard index of the two stem sets.
double topic_similarity(const Candidate &a, const Candidate &b);

// Average-linkage agglomeration. Each step merges the most similar pair of
// clusters (ties within kSimilarityTieEpsilon go to the lexicographically
// smallest (id, id) pair, where merged clusters take fresh ids n, n+1, ...)
// and stops once the best similarity is below the threshold. Topics are
// returned in order of their representative's first occurrence.
std::vector<Topic> cluster_topics(std::span<const Candidate> candidates, const RankConfig &config);

// Edges in both directions between candidates of different topics, weighted
// by the sum of 1/|p - q| over their occurrence pairs. Throws DegenerateGraph
// for fewer than two topics.
WeightedDigraph build_graph(std::span<const Candidate> candidates, std::span<const Topic> topics);

// For each topic with at least two members, every edge cj -> c1 into the
// representative c1 (first position p1) gains
//   alpha * e^(1/p1) * sum_{ck in topic, ck != c1} w(cj -> ck),
// using the weights of the input graph.
WeightedDigraph adjust_weights(const WeightedDigraph &graph, std::span<const Candidate> candidates,
                               std::span<const Topic> topics, double alpha);

// Weighted PageRank from a uniform start; dangling nodes spread uniformly.
// Stops when the L1 change drops below pagerank_tol or after
// pagerank_max_iters iterations.
std::vector<double> rank(const WeightedDigraph &graph, const RankConfig &config);

// Per segment: candidates occurring there, by (score desc, first occurrence
// asc, surface asc), cut to top_k. One entry per segment, empty or not.
KeyphraseResult top_keyphrases(std::span<const double> scores, std::span<const Candidate> candidates,
                               std::size_t segment_count, const RankConfig &config);

// Intermediate state of one extraction run.
struct RankedDocument {
  std::vector<Candidate> candidates;
  std::vector<Topic> topics;
  std::vector<double> scores;  // indexed by CandidateId
  // True when fewer than two topics forced ranking by occurrence count.
  bool frequency_fallback = false;
};

RankedDocument rank_document(const TaggedDocument &doc, const RankConfig &config,
                             const StopwordList &stopwords);

KeyphraseResult extract(const TaggedDocument &doc, const RankConfig &config,
                        const StopwordList &stopwords);

}  // namespace scholiview

#endif  // SCHOLIVIEW_KEYPHRASE_H_
