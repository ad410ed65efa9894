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

#include "scholiview/keyphrase.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace scholiview {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::kAverage:
      return "average";
  }
  return "average";
}

void RankConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be a finite value >= 0");
  }
  if (!(cluster_threshold > 0.0 && cluster_threshold <= 1.0)) {
    throw std::invalid_argument("cluster_threshold must be in (0, 1]");
  }
  if (top_k == 0) throw std::invalid_argument("top_k must be positive");
  if (!(damping > 0.0 && damping < 1.0)) throw std::invalid_argument("damping must be in (0, 1)");
  if (!(pagerank_tol > 0.0)) throw std::invalid_argument("pagerank_tol must be positive");
  if (pagerank_max_iters == 0) throw std::invalid_argument("pagerank_max_iters must be positive");
}

// ---------------------------------------------------------------------------
// WeightedDigraph

void WeightedDigraph::set_weight(CandidateId from, CandidateId to, double w) {
  if (from >= n_ || to >= n_) throw std::out_of_range("WeightedDigraph: node out of range");
  if (from == to) throw std::invalid_argument("WeightedDigraph: self-edges are not allowed");
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw std::invalid_argument("WeightedDigraph: weight must be finite and non-negative");
  }
  weights_[from * n_ + to] = w;
  present_[from * n_ + to] = 1;
}

double WeightedDigraph::out_weight(CandidateId from) const {
  double s = 0.0;
  for (std::size_t j = 0; j < n_; ++j) s += weights_[from * n_ + j];
  return s;
}

std::size_t WeightedDigraph::edge_count() const {
  return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), 1));
}

// ---------------------------------------------------------------------------
// Candidate selection

std::vector<Candidate> select_candidates(const TaggedDocument &doc, const RankConfig &config,
                                         const StopwordList &stopwords) {
  std::vector<Candidate> candidates;
  std::unordered_map<std::string, CandidateId> by_stems;

  auto flush = [&](std::vector<const TaggedToken *> &run, std::size_t segment) {
    if (run.empty()) return;
    if (run.size() > kMaxCandidateTokens) run.resize(kMaxCandidateTokens);
    std::vector<std::string> stems;
    std::string surface;
    std::string key;
    for (const TaggedToken *t : run) {
      stems.push_back(stem(t->surface, stopwords.language));
      if (!surface.empty()) surface.push_back(' ');
      surface += t->surface;
      key += stems.back();
      key.push_back('\x1f');
    }
    Occurrence occ{run.front()->position, segment};
    auto [it, fresh] = by_stems.emplace(key, candidates.size());
    if (fresh) {
      candidates.push_back({std::move(surface), std::move(stems), {occ}});
    } else {
      candidates[it->second].occurrences.push_back(occ);
    }
    run.clear();
  };

  std::vector<const TaggedToken *> run;
  for (std::size_t s = 0; s < doc.segments.size(); ++s) {
    for (const TaggedToken &t : doc.segments[s]) {
      if (config.allowed_tags.contains(t.tag) && !is_stopword(t.surface, stopwords)) {
        run.push_back(&t);
      } else {
        flush(run, s);
      }
    }
    flush(run, s);
  }
  return candidates;
}

double topic_similarity(const Candidate &a, const Candidate &b) {
  std::set<std::string> sa(a.stems.begin(), a.stems.end());
  std::set<std::string> sb(b.stems.begin(), b.stems.end());
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto &s : sa) common += sb.count(s);
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

// ---------------------------------------------------------------------------
// Topic clustering

std::vector<Topic> cluster_topics(std::span<const Candidate> candidates, const RankConfig &config) {
  const std::size_t n = candidates.size();
  if (n == 0) return {};

  // Slot k starts as cluster k. A merge writes the union into the lower slot
  // and retires the other; pair_sum keeps the total pairwise similarity
  // between the members of two live slots.
  std::vector<std::vector<CandidateId>> members(n);
  std::vector<std::size_t> ids(n);
  std::vector<bool> live(n, true);
  std::vector<double> pair_sum(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    ids[i] = i;
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_sum[i * n + j] = pair_sum[j * n + i] = topic_similarity(candidates[i], candidates[j]);
    }
  }
  auto average = [&](std::size_t a, std::size_t b) {
    return pair_sum[a * n + b] / static_cast<double>(members[a].size() * members[b].size());
  };

  std::size_t next_id = n;
  std::size_t live_count = n;
  while (live_count > 1) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (!live[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (live[b]) best = std::max(best, average(a, b));
      }
    }
    if (best + kSimilarityTieEpsilon < config.cluster_threshold) break;

    std::pair<std::size_t, std::size_t> pick_ids{std::numeric_limits<std::size_t>::max(), 0};
    std::pair<std::size_t, std::size_t> pick_slots{0, 0};
    for (std::size_t a = 0; a < n; ++a) {
      if (!live[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!live[b] || average(a, b) < best - kSimilarityTieEpsilon) continue;
        std::pair<std::size_t, std::size_t> key = std::minmax(ids[a], ids[b]);
        if (key < pick_ids) {
          pick_ids = key;
          pick_slots = {a, b};
        }
      }
    }

    auto [keep, drop] = pick_slots;
    for (std::size_t c = 0; c < n; ++c) {
      if (!live[c] || c == keep || c == drop) continue;
      double s = pair_sum[keep * n + c] + pair_sum[drop * n + c];
      pair_sum[keep * n + c] = pair_sum[c * n + keep] = s;
    }
    members[keep].insert(members[keep].end(), members[drop].begin(), members[drop].end());
    std::sort(members[keep].begin(), members[keep].end());
    members[drop].clear();
    live[drop] = false;
    ids[keep] = next_id++;
    --live_count;
  }

  std::vector<Topic> topics;
  for (std::size_t a = 0; a < n; ++a) {
    if (!live[a]) continue;
    Topic t;
    t.members = members[a];
    t.representative = *std::min_element(
        t.members.begin(), t.members.end(), [&](CandidateId x, CandidateId y) {
          auto px = candidates[x].first_position();
          auto py = candidates[y].first_position();
          return px != py ? px < py : x < y;
        });
    topics.push_back(std::move(t));
  }
  std::sort(topics.begin(), topics.end(), [&](const Topic &x, const Topic &y) {
    auto px = candidates[x.representative].first_position();
    auto py = candidates[y.representative].first_position();
    return px != py ? px < py : x.representative < y.representative;
  });
  return topics;
}

// ---------------------------------------------------------------------------
// Graph

namespace {

std::vector<std::size_t> topic_assignment(std::size_t n, std::span<const Topic> topics) {
  constexpr auto kUnassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> topic_of(n, kUnassigned);
  for (std::size_t t = 0; t < topics.size(); ++t) {
    for (CandidateId c : topics[t].members) {
      if (c >= n) throw std::invalid_argument("topic member out of range");
      if (topic_of[c] != kUnassigned) {
        throw std::invalid_argument("candidate assigned to more than one topic");
      }
      topic_of[c] = t;
    }
  }
  if (std::find(topic_of.begin(), topic_of.end(), kUnassigned) != topic_of.end()) {
    throw std::invalid_argument("candidate without a topic");
  }
  return topic_of;
}

}  // namespace

WeightedDigraph build_graph(std::span<const Candidate> candidates, std::span<const Topic> topics) {
  if (topics.size() < 2) throw DegenerateGraph(topics.size());
  const std::size_t n = candidates.size();
  auto topic_of = topic_assignment(n, topics);

  WeightedDigraph graph(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (topic_of[i] == topic_of[j]) continue;
      double w = 0.0;
      for (const Occurrence &p : candidates[i].occurrences) {
        for (const Occurrence &q : candidates[j].occurrences) {
          auto gap = p.first_token_position > q.first_token_position
                         ? p.first_token_position - q.first_token_position
                         : q.first_token_position - p.first_token_position;
          if (gap > 0) w += 1.0 / static_cast<double>(gap);
        }
      }
      graph.set_weight(i, j, w);
      graph.set_weight(j, i, w);
    }
  }
  return graph;
}

WeightedDigraph adjust_weights(const WeightedDigraph &graph, std::span<const Candidate> candidates,
                               std::span<const Topic> topics, double alpha) {
  WeightedDigraph out = graph;
  if (alpha == 0.0) return out;
  for (const Topic &topic : topics) {
    if (topic.members.size() < 2) continue;
    CandidateId first = topic.representative;
    double boost = alpha * std::exp(1.0 / static_cast<double>(candidates[first].first_position()));
    for (CandidateId from = 0; from < graph.size(); ++from) {
      if (!graph.has_edge(from, first)) continue;
      double sum = 0.0;
      for (CandidateId other : topic.members) {
        if (other != first) sum += graph.weight(from, other);
      }
      out.set_weight(from, first, graph.weight(from, first) + boost * sum);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ranking

std::vector<double> rank(const WeightedDigraph &graph, const RankConfig &config) {
  const std::size_t n = graph.size();
  if (n == 0) return {};
  const double d = config.damping;
  const double base = (1.0 - d) / static_cast<double>(n);

  std::vector<double> out_w(n);
  for (std::size_t j = 0; j < n; ++j) out_w[j] = graph.out_weight(j);

  std::vector<double> scores(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < config.pagerank_max_iters; ++iter) {
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (out_w[j] == 0.0) dangling += scores[j];
    }
    std::fill(next.begin(), next.end(), base + d * dangling / static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (out_w[j] == 0.0) continue;
      double share = d * scores[j] / out_w[j];
      for (std::size_t i = 0; i < n; ++i) {
        double w = graph.weight(j, i);
        if (w != 0.0) next[i] += share * w;
      }
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::abs(next[i] - scores[i]);
    scores.swap(next);
    if (change < config.pagerank_tol) break;
  }
  return scores;
}

KeyphraseResult top_keyphrases(std::span<const double> scores, std::span<const Candidate> candidates,
                               std::size_t segment_count, const RankConfig &config) {
  if (scores.size() != candidates.size()) {
    throw std::invalid_argument("top_keyphrases: one score per candidate required");
  }
  KeyphraseResult result;
  result.per_segment.resize(segment_count);
  std::vector<std::vector<CandidateId>> in_segment(segment_count);
  for (CandidateId c = 0; c < candidates.size(); ++c) {
    for (const Occurrence &occ : candidates[c].occurrences) {
      if (occ.segment_index >= segment_count) {
        throw std::invalid_argument("occurrence refers to a missing segment");
      }
      auto &list = in_segment[occ.segment_index];
      if (list.empty() || list.back() != c) list.push_back(c);
    }
  }
  for (std::size_t s = 0; s < segment_count; ++s) {
    auto &ids = in_segment[s];
    std::sort(ids.begin(), ids.end(), [&](CandidateId a, CandidateId b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      auto pa = candidates[a].first_position();
      auto pb = candidates[b].first_position();
      if (pa != pb) return pa < pb;
      return candidates[a].surface_form < candidates[b].surface_form;
    });
    if (ids.size() > config.top_k) ids.resize(config.top_k);
    auto &row = result.per_segment[s];
    row.segment_index = s;
    for (CandidateId c : ids) row.keyphrases.push_back({candidates[c].surface_form, scores[c]});
  }
  return result;
}

RankedDocument rank_document(const TaggedDocument &doc, const RankConfig &config,
                             const StopwordList &stopwords) {
  config.validate();
  RankedDocument out;
  out.candidates = select_candidates(doc, config, stopwords);
  if (out.candidates.empty()) return out;
  out.topics = cluster_topics(out.candidates, config);
  if (out.topics.size() < 2) {
    out.frequency_fallback = true;
    double total = 0.0;
    for (const auto &c : out.candidates) total += static_cast<double>(c.occurrences.size());
    for (const auto &c : out.candidates) {
      out.scores.push_back(static_cast<double>(c.occurrences.size()) / total);
    }
    return out;
  }
  WeightedDigraph graph = build_graph(out.candidates, out.topics);
  graph = adjust_weights(graph, out.candidates, out.topics, config.alpha);
  out.scores = rank(graph, config);
  return out;
}

KeyphraseResult extract(const TaggedDocument &doc, const RankConfig &config,
                        const StopwordList &stopwords) {
  RankedDocument ranked = rank_document(doc, config, stopwords);
  return top_keyphrases(ranked.scores, ranked.candidates, doc.segments.size(), config);
}

}  // namespace scholiview
