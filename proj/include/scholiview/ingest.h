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

// Metadata ingestion: an N-Triples reader, an in-memory triple store with
// the single ASR-video selection query, and the video bundle loader.

#ifndef SCHOLIVIEW_INGEST_H_
#define SCHOLIVIEW_INGEST_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "scholiview/error.h"

namespace scholiview {

// ---------------------------------------------------------------------------
// RDF terms and triples

struct Term {
  enum class Kind { kIri, kBlank, kLiteral };

  Kind kind = Kind::kIri;
  // IRI without angle brackets, blank node label without "_:", or the
  // unescaped lexical form of a literal.
  std::string value;
  // Literals only; at most one of the two is non-empty.
  std::string language;
  std::string datatype;

  static Term iri(std::string v) { return {Kind::kIri, std::move(v), {}, {}}; }
  static Term blank(std::string label) { return {Kind::kBlank, std::move(label), {}, {}}; }
  static Term literal(std::string lexical, std::string language = {},
                      std::string datatype = {}) {
    return {Kind::kLiteral, std::move(lexical), std::move(language), std::move(datatype)};
  }

  bool is_iri() const { return kind == Kind::kIri; }
  bool is_blank() const { return kind == Kind::kBlank; }
  bool is_literal() const { return kind == Kind::kLiteral; }

  // Canonical N-Triples spelling of the term.
  std::string to_ntriples() const;

  auto operator<=>(const Term &) const = default;
  bool operator==(const Term &) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple &) const = default;
  bool operator==(const Triple &) const = default;
};

// Thrown for malformed N-Triples input.
class ParseError : public LineError {
 public:
  ParseError(std::size_t line, const std::string &reason)
      : LineError("N-Triples parse error", line, reason) {}
};

// Set of triples with by-subject and by-predicate lookup. Duplicates are
// stored once.
class TripleSet {
 public:
  TripleSet() = default;
  TripleSet(const TripleSet &other);
  TripleSet &operator=(const TripleSet &other);
  TripleSet(TripleSet &&) noexcept = default;
  TripleSet &operator=(TripleSet &&) noexcept = default;

  // Returns false if the triple was already present. Throws
  // std::invalid_argument if the triple violates RDF term positions.
  bool insert(Triple triple);

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }

  // Triples whose predicate IRI is `predicate`; empty if none.
  const std::vector<const Triple *> &with_predicate(std::string_view predicate) const;
  // Triples whose subject equals `subject`; empty if none.
  const std::vector<const Triple *> &with_subject(const Term &subject) const;

  bool operator==(const TripleSet &other) const { return triples_ == other.triples_; }

 private:
  void index(const Triple &t);

  std::set<Triple> triples_;
  std::unordered_map<std::string, std::vector<const Triple *>> by_predicate_;
  std::unordered_map<std::string, std::vector<const Triple *>> by_subject_;
};

TripleSet parse_ntriples(std::string_view input);
TripleSet parse_ntriples(std::istream &input);

// Canonical form: one statement per line, sorted by term order.
std::string serialize_ntriples(const TripleSet &store);

// Predicate IRIs of the annotation join. The defaults are the namespaces
// written in the portal's published selection query.
struct AnnotationVocabulary {
  std::string annotated_by = "http://w3.org/ns/oa#annotatedBy";
  std::string has_target = "http://w3.org/ns/oa#hasTarget";
  std::string is_part_of = "http://purl.org/dc/terms/isPartOf";
};

// Distinct ?url bindings of
//   ?annotation oa:annotatedBy <asr_tool_iri> .
//   ?annotation oa:hasTarget ?videofragment .
//   ?videofragment dcterms:isPartOf ?url .
// restricted to IRI-valued ?url.
std::set<std::string> query_videos_with_asr(const TripleSet &store,
                                            std::string_view asr_tool_iri,
                                            const AnnotationVocabulary &vocab = {});

// ---------------------------------------------------------------------------
// Video records

enum class EntitySource { kAsr, kOcr, kVisualConcept };

std::string_view to_string(EntitySource source);
// Accepts "ASR", "OCR", "VISUAL_CONCEPT". Throws SchemaError otherwise.
EntitySource parse_entity_source(std::string_view text);

struct TimeSegment {
  std::int64_t start = 0;  // seconds
  std::int64_t end = 0;    // seconds, > start
  std::string transcript;

  bool operator==(const TimeSegment &) const = default;
};

struct KeyEntity {
  std::string label;
  EntitySource source = EntitySource::kAsr;
  std::int64_t frequency = 1;

  bool operator==(const KeyEntity &) const = default;
};

struct VideoRecord {
  std::string video_id;
  std::string url;
  std::string title;
  std::string language;  // ISO 639-1
  std::vector<TimeSegment> segments;
  std::vector<KeyEntity> entities;

  bool operator==(const VideoRecord &) const = default;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string &what) : Error("schema error: " + what) {}
};

class OrderError : public Error {
 public:
  explicit OrderError(const std::string &what) : Error("segment order error: " + what) {}
};

// Builds a record from a metadata document (id, url, title, language,
// entities) and a transcript document (segments). Segments are sorted by
// start time; entities are merged on their lowercased label, summing
// frequencies and keeping the first-seen spelling and source.
VideoRecord load_video_record(const nlohmann::json &metadata, const nlohmann::json &transcript);

// A bundle carries both halves in one document.
VideoRecord load_video_bundle(const nlohmann::json &bundle);
VideoRecord parse_video_bundle(std::string_view json_text);
VideoRecord load_video_bundle_file(const std::filesystem::path &path);

}  // namespace scholiview

#endif  // SCHOLIVIEW_INGEST_H_
