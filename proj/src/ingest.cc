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

#include "scholiview/ingest.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "scholiview/utf8.h"

namespace scholiview {

// ---------------------------------------------------------------------------
// Terms

namespace {

void escape_literal(std::string &out, std::string_view value) {
  for (char c : value) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(c);
    }
  }
}

}  // namespace

std::string Term::to_ntriples() const {
  std::string out;
  switch (kind) {
    case Kind::kIri:
      out.reserve(value.size() + 2);
      out.push_back('<');
      out += value;
      out.push_back('>');
      break;
    case Kind::kBlank:
      out = "_:" + value;
      break;
    case Kind::kLiteral:
      out.push_back('"');
      escape_literal(out, value);
      out.push_back('"');
      if (!language.empty()) {
        out += "@" + language;
      } else if (!datatype.empty()) {
        out += "^^<" + datatype + ">";
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// TripleSet

TripleSet::TripleSet(const TripleSet &other) {
  for (const auto &t : other.triples_) insert(t);
}

TripleSet &TripleSet::operator=(const TripleSet &other) {
  if (this != &other) {
    TripleSet copy(other);
    *this = std::move(copy);
  }
  return *this;
}

bool TripleSet::insert(Triple triple) {
  if (triple.subject.is_literal()) {
    throw std::invalid_argument("triple subject cannot be a literal");
  }
  if (!triple.predicate.is_iri()) {
    throw std::invalid_argument("triple predicate must be an IRI");
  }
  for (const Term *term : {&triple.subject, &triple.predicate, &triple.object}) {
    if (!term->is_literal() && term->value.empty()) {
      throw std::invalid_argument("IRI or blank node label must be non-empty");
    }
  }
  if (triple.object.is_literal() && !triple.object.language.empty() &&
      !triple.object.datatype.empty()) {
    throw std::invalid_argument("literal cannot carry both a language tag and a datatype");
  }
  auto [it, inserted] = triples_.insert(std::move(triple));
  if (inserted) index(*it);
  return inserted;
}

void TripleSet::index(const Triple &t) {
  by_predicate_[t.predicate.value].push_back(&t);
  by_subject_[t.subject.to_ntriples()].push_back(&t);
}

const std::vector<const Triple *> &TripleSet::with_predicate(std::string_view predicate) const {
  static const std::vector<const Triple *> kEmpty;
  auto it = by_predicate_.find(std::string(predicate));
  return it == by_predicate_.end() ? kEmpty : it->second;
}

const std::vector<const Triple *> &TripleSet::with_subject(const Term &subject) const {
  static const std::vector<const Triple *> kEmpty;
  auto it = by_subject_.find(subject.to_ntriples());
  return it == by_subject_.end() ? kEmpty : it->second;
}

// ---------------------------------------------------------------------------
// N-Triples reader

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  Triple parse() {
    Triple t;
    skip_ws();
    t.subject = parse_subject();
    skip_ws();
    t.predicate = parse_iri("predicate");
    skip_ws();
    t.object = parse_object();
    skip_ws();
    if (at_end() || s_[pos_] != '.') fail("missing terminating '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && s_[pos_] != '#') fail("unexpected content after '.'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string &reason) const { throw ParseError(line_no_, reason); }

  bool at_end() const { return pos_ >= s_.size(); }

  void skip_ws() {
    while (!at_end() && is_ws(s_[pos_])) ++pos_;
  }

  Term parse_subject() {
    if (at_end()) fail("missing subject");
    if (s_[pos_] == '<') return parse_iri("subject");
    if (s_.substr(pos_, 2) == "_:") return parse_blank();
    if (s_[pos_] == '"') fail("subject cannot be a literal");
    fail("subject must be an IRI or blank node");
  }

  Term parse_object() {
    if (at_end()) fail("missing object");
    char c = s_[pos_];
    if (c == '<') return parse_iri("object");
    if (s_.substr(pos_, 2) == "_:") return parse_blank();
    if (c == '"') return parse_literal();
    fail("object must be an IRI, blank node or literal");
  }

  Term parse_iri(const char *role) {
    if (at_end() || s_[pos_] != '<') fail(std::string(role) + " must be an IRI in angle brackets");
    ++pos_;
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI: missing '>'");
      char c = s_[pos_];
      if (c == '>') break;
      if (c == '<' || c == '"' || c == ' ' || c == '\t' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail(std::string("invalid character '") + c + "' in IRI");
      }
      if (c == '\\') {
        ++pos_;
        append_uchar(value);
        continue;
      }
      value.push_back(c);
      ++pos_;
    }
    ++pos_;
    if (value.empty()) fail("empty IRI");
    return Term::iri(std::move(value));
  }

  Term parse_blank() {
    pos_ += 2;
    std::size_t start = pos_;
    while (!at_end() && !is_ws(s_[pos_]) && s_[pos_] != '<' && s_[pos_] != '"') ++pos_;
    // A trailing '.' belongs to the statement, not to the label.
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("empty blank node label");
    return Term::blank(std::string(s_.substr(start, pos_ - start)));
  }

  Term parse_literal() {
    ++pos_;
    std::string value;
    while (true) {
      if (at_end()) fail("unbalanced quotes: unterminated literal");
      char c = s_[pos_];
      if (c == '"') break;
      if (c == '\\') {
        ++pos_;
        if (at_end()) fail("dangling escape in literal");
        char e = s_[pos_];
        switch (e) {
          case 't': value.push_back('\t'); ++pos_; break;
          case 'b': value.push_back('\b'); ++pos_; break;
          case 'n': value.push_back('\n'); ++pos_; break;
          case 'r': value.push_back('\r'); ++pos_; break;
          case 'f': value.push_back('\f'); ++pos_; break;
          case '"': value.push_back('"'); ++pos_; break;
          case '\'': value.push_back('\''); ++pos_; break;
          case '\\': value.push_back('\\'); ++pos_; break;
          case 'u':
          case 'U':
            append_uchar(value);
            break;
          default:
            fail(std::string("invalid escape '\\") + e + "' in literal");
        }
        continue;
      }
      value.push_back(c);
      ++pos_;
    }
    ++pos_;
    if (!at_end() && s_[pos_] == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ == start || !std::isalpha(static_cast<unsigned char>(s_[start]))) {
        fail("malformed language tag");
      }
      return Term::literal(std::move(value), std::string(s_.substr(start, pos_ - start)));
    }
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      Term dt = parse_iri("datatype");
      return Term::literal(std::move(value), {}, std::move(dt.value));
    }
    return Term::literal(std::move(value));
  }

  // Expects pos_ at 'u' or 'U'.
  void append_uchar(std::string &out) {
    if (at_end()) fail("dangling escape");
    char kind = s_[pos_];
    std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) fail("only \\u and \\U escapes are allowed here");
    ++pos_;
    if (pos_ + digits > s_.size()) fail("truncated unicode escape");
    char32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char h = s_[pos_ + i];
      int v;
      if (h >= '0' && h <= '9') v = h - '0';
      else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
      else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
      else fail("invalid hex digit in unicode escape");
      cp = (cp << 4) | static_cast<char32_t>(v);
    }
    if (cp > 0x10FFFF) fail("unicode escape out of range");
    pos_ += digits;
    utf8::append(out, cp);
  }

  std::string_view s_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

TripleSet parse_ntriples(std::string_view input) {
  TripleSet store;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= input.size()) {
    std::size_t end = input.find('\n', begin);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(begin, end - begin);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && is_ws(line[first])) ++first;
    if (first < line.size() && line[first] != '#') {
      store.insert(LineParser(line, line_no).parse());
    }
    if (end == input.size()) break;
    begin = end + 1;
  }
  return store;
}

TripleSet parse_ntriples(std::istream &input) {
  std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
  return parse_ntriples(text);
}

std::string serialize_ntriples(const TripleSet &store) {
  std::string out;
  for (const Triple &t : store) {
    out += t.subject.to_ntriples();
    out.push_back(' ');
    out += t.predicate.to_ntriples();
    out.push_back(' ');
    out += t.object.to_ntriples();
    out += " .\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Listing-style selection query

std::set<std::string> query_videos_with_asr(const TripleSet &store,
                                            std::string_view asr_tool_iri,
                                            const AnnotationVocabulary &vocab) {
  std::set<std::string> urls;
  for (const Triple *by : store.with_predicate(vocab.annotated_by)) {
    if (!by->object.is_iri() || by->object.value != asr_tool_iri) continue;
    for (const Triple *target : store.with_subject(by->subject)) {
      if (target->predicate.value != vocab.has_target || target->object.is_literal()) continue;
      for (const Triple *part : store.with_subject(target->object)) {
        if (part->predicate.value == vocab.is_part_of && part->object.is_iri()) {
          urls.insert(part->object.value);
        }
      }
    }
  }
  return urls;
}

// ---------------------------------------------------------------------------
// Video records

std::string_view to_string(EntitySource source) {
  switch (source) {
    case EntitySource::kAsr:
      return "ASR";
    case EntitySource::kOcr:
      return "OCR";
    case EntitySource::kVisualConcept:
      return "VISUAL_CONCEPT";
  }
  return "ASR";
}

EntitySource parse_entity_source(std::string_view text) {
  if (text == "ASR") return EntitySource::kAsr;
  if (text == "OCR") return EntitySource::kOcr;
  if (text == "VISUAL_CONCEPT") return EntitySource::kVisualConcept;
  throw SchemaError("unknown entity source \"" + std::string(text) + "\"");
}

namespace {

using nlohmann::json;

const json &require(const json &doc, const char *field, const std::string &where) {
  if (!doc.is_object()) throw SchemaError(where + " must be an object");
  auto it = doc.find(field);
  if (it == doc.end()) throw SchemaError("missing required field \"" + std::string(field) +
                                         "\" in " + where);
  return *it;
}

std::string require_string(const json &doc, const char *field, const std::string &where) {
  const json &v = require(doc, field, where);
  if (!v.is_string()) throw SchemaError("field \"" + std::string(field) + "\" in " + where +
                                        " must be a string");
  return v.get<std::string>();
}

std::int64_t require_integer(const json &doc, const char *field, const std::string &where) {
  const json &v = require(doc, field, where);
  if (!v.is_number_integer()) {
    throw SchemaError("field \"" + std::string(field) + "\" in " + where +
                      " must be an integer");
  }
  return v.get<std::int64_t>();
}

bool valid_video_id(std::string_view id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  });
}

bool valid_language(std::string_view lang) {
  return lang.size() == 2 && std::islower(static_cast<unsigned char>(lang[0])) &&
         std::islower(static_cast<unsigned char>(lang[1]));
}

}  // namespace

VideoRecord load_video_record(const json &metadata, const json &transcript) {
  VideoRecord record;
  record.video_id = require_string(metadata, "id", "video metadata");
  if (!valid_video_id(record.video_id)) {
    throw SchemaError("video id \"" + record.video_id +
                      "\" must be non-empty and use only [A-Za-z0-9._-]");
  }
  record.url = require_string(metadata, "url", "video metadata");
  if (record.url.empty()) throw SchemaError("url must be non-empty");
  record.title = require_string(metadata, "title", "video metadata");
  record.language = require_string(metadata, "language", "video metadata");
  if (!valid_language(record.language)) {
    throw SchemaError("language \"" + record.language + "\" is not an ISO 639-1 code");
  }

  const json &entities = require(metadata, "entities", "video metadata");
  if (!entities.is_array()) throw SchemaError("\"entities\" must be an array");
  std::unordered_map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    std::string where = "entities[" + std::to_string(i) + "]";
    const json &e = entities[i];
    std::string label = utf8::trim(require_string(e, "label", where));
    if (label.empty()) throw SchemaError(where + ": label is empty");
    EntitySource source = parse_entity_source(require_string(e, "source", where));
    std::int64_t frequency = require_integer(e, "frequency", where);
    if (frequency < 1) throw SchemaError(where + ": frequency must be >= 1");

    std::string key = utf8::to_lower(label);
    auto [it, fresh] = by_key.emplace(key, record.entities.size());
    if (fresh) {
      record.entities.push_back({std::move(label), source, frequency});
    } else {
      record.entities[it->second].frequency += frequency;
    }
  }

  const json &segments = require(transcript, "segments", "transcript");
  if (!segments.is_array()) throw SchemaError("\"segments\" must be an array");
  for (std::size_t i = 0; i < segments.size(); ++i) {
    std::string where = "segments[" + std::to_string(i) + "]";
    const json &s = segments[i];
    TimeSegment seg;
    seg.start = require_integer(s, "start", where);
    seg.end = require_integer(s, "end", where);
    seg.transcript = require_string(s, "transcript", where);
    if (seg.start < 0) throw SchemaError(where + ": start must be non-negative");
    if (seg.end <= seg.start) throw SchemaError(where + ": end must be greater than start");
    record.segments.push_back(std::move(seg));
  }
  std::stable_sort(record.segments.begin(), record.segments.end(),
                   [](const TimeSegment &a, const TimeSegment &b) {
                     return a.start != b.start ? a.start < b.start : a.end < b.end;
                   });
  for (std::size_t i = 1; i < record.segments.size(); ++i) {
    const auto &prev = record.segments[i - 1];
    const auto &cur = record.segments[i];
    if (cur.start < prev.end) {
      throw OrderError("segment [" + std::to_string(cur.start) + ", " + std::to_string(cur.end) +
                       ") overlaps [" + std::to_string(prev.start) + ", " +
                       std::to_string(prev.end) + ")");
    }
  }
  return record;
}

VideoRecord load_video_bundle(const json &bundle) { return load_video_record(bundle, bundle); }

VideoRecord parse_video_bundle(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  return load_video_bundle(doc);
}

VideoRecord load_video_bundle_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open video bundle " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_video_bundle(text);
}

}  // namespace scholiview
