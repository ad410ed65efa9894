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

#ifndef SCHOLIVIEW_PIPELINE_H_
#define SCHOLIVIEW_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scholiview/embedding.h"
#include "scholiview/error.h"
#include "scholiview/ingest.h"
#include "scholiview/keyphrase.h"
#include "scholiview/projection.h"
#include "scholiview/textprep.h"

namespace scholiview {

inline constexpr std::string_view kSchemaVersion = "scholiview/1";

struct PipelineConfig {
  RankConfig rank;
  std::string embedding_path;
  std::string language = "de";
  double r_max = kDefaultMaxRadius;
  std::optional<std::size_t> max_vocab = kDefaultMaxVocab;
  std::int64_t min_entity_frequency = 1;
  bool drop_oov_entities = true;

  void validate() const;

  bool operator==(const PipelineConfig &) const = default;
};

struct KeyphraseRow {
  std::int64_t segment_start = 0;
  std::int64_t segment_end = 0;
  std::vector<std::string> keyphrases;

  bool operator==(const KeyphraseRow &) const = default;
};

struct SummaryVisualization {
  std::string video_id;
  std::string url;
  std::string title;
  std::vector<Bubble> bubbles;
  std::vector<KeyphraseRow> keyphrase_table;
  PipelineConfig generator_config;

  bool operator==(const SummaryVisualization &) const = default;
};

class EmptySummary : public Error {
 public:
  explicit EmptySummary(const std::string &video_id)
      : Error("no entity of video \"" + video_id + "\" survived filtering") {}
};

// Vector for a possibly multi-word entity label: angle-bracket qualifiers
// such as "<Mathematik>" are removed, punctuation dropped, and the remaining
// tokens averaged. Tokens that cannot be embedded are skipped; throws
// OovUnresolvable only when none can.
WordVector entity_vector(const EmbeddingTable &table, std::string_view label);

struct SummaryDiagnostics {
  std::vector<std::string> dropped_entities;  // "label: reason"
};

// Filters entities by frequency, embeds them, projects to 2D, lays out the
// bubbles, and extracts per-segment keyphrases from `tagged`, which must
// have one token list per record segment. Throws EmptySummary if no entity
// is left and SchemaError on a segment count mismatch.
SummaryVisualization summarize(const VideoRecord &record, const TaggedDocument &tagged,
                               const EmbeddingTable &table, const StopwordList &stopwords,
                               const PipelineConfig &config,
                               SummaryDiagnostics *diagnostics = nullptr);

// UTF-8 JSON with a fixed key order. Plot values are written with six
// decimals; configuration reals use six decimals unless that would lose
// precision.
std::string emit_json(const SummaryVisualization &viz);

// Inverse of emit_json. Throws SchemaError on a wrong schema version or
// malformed document.
SummaryVisualization parse_summary_json(std::string_view text);

// Self-contained page: static SVG bubble diagram, keyphrase table, the JSON
// document in a <script type="application/json"> block, and a small inline
// script for hover, selection, zoom and pan.
std::string emit_html(const SummaryVisualization &viz);

}  // namespace scholiview

#endif  // SCHOLIVIEW_PIPELINE_H_
