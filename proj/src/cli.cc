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

#include "scholiview/cli.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "scholiview/embedding.h"
#include "scholiview/ingest.h"
#include "scholiview/pipeline.h"
#include "scholiview/textprep.h"

#ifndef SCHOLIVIEW_DEFAULT_DATA_DIR
#define SCHOLIVIEW_DEFAULT_DATA_DIR "data"
#endif

namespace scholiview::cli {

namespace fs = std::filesystem;

namespace {

struct Tuning {
  double alpha = 1.0;
  double threshold = 0.4;
  std::size_t top_k = 20;
  std::string language = "de";
  double r_max = kDefaultMaxRadius;
  std::size_t max_vocab = kDefaultMaxVocab;
  std::int64_t min_frequency = 1;
  bool keep_oov = false;
  std::string data_dir;
  std::string format = "json";
};

void add_tuning(CLI::App *cmd, Tuning &t) {
  cmd->add_option("--alpha", t.alpha, "weight adjustment strength for first-occurring candidates")
      ->capture_default_str();
  cmd->add_option("--threshold", t.threshold, "minimum average stem overlap for topic merges")
      ->capture_default_str();
  cmd->add_option("--topk", t.top_k, "keyphrases kept per time segment")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--lang", t.language, "stopword and stemming language (de, en)")
      ->check(CLI::IsMember({"de", "en"}))
      ->capture_default_str();
  cmd->add_option("--rmax", t.r_max, "radius of the most frequent entity")->capture_default_str();
  cmd->add_option("--max-vocab", t.max_vocab, "vector rows to load")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--min-frequency", t.min_frequency, "drop entities seen fewer times")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--keep-oov", t.keep_oov, "fail instead of dropping entities that cannot be embedded");
  cmd->add_option("--data-dir", t.data_dir, "directory holding stopwords/ and tagger/");
  cmd->add_option("--format", t.format, "output files to write")
      ->check(CLI::IsMember({"json", "html", "both"}))
      ->capture_default_str();
}

PipelineConfig make_config(const Tuning &t, const std::string &vectors) {
  PipelineConfig c;
  c.rank.alpha = t.alpha;
  c.rank.cluster_threshold = t.threshold;
  c.rank.top_k = t.top_k;
  c.embedding_path = vectors;
  c.language = t.language;
  c.r_max = t.r_max;
  c.max_vocab = t.max_vocab;
  c.min_entity_frequency = t.min_frequency;
  c.drop_oov_entities = !t.keep_oov;
  c.validate();
  return c;
}

fs::path data_dir(const Tuning &t) {
  if (!t.data_dir.empty()) return t.data_dir;
  if (const char *env = std::getenv("SCHOLIVIEW_DATA_DIR"); env && *env) return env;
  return SCHOLIVIEW_DEFAULT_DATA_DIR;
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path &path, const std::string &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << bytes;
  if (!out) throw Error("failed writing " + path.string());
}

// Read-only state shared by every video of one invocation.
struct Resources {
  PipelineConfig config;
  std::unique_ptr<EmbeddingTable> table;
  StopwordList stopwords;
  std::unique_ptr<FallbackTagger> fallback;
  fs::path data;

  const FallbackTagger &fallback_tagger() {
    if (!fallback) {
      fallback = std::make_unique<FallbackTagger>(
          load_lexicon_file(data / "tagger" / (config.language + "_lexicon.tsv")),
          load_suffix_rules_file(data / "tagger" / (config.language + "_suffix_rules.tsv")));
    }
    return *fallback;
  }
};

Resources load_resources(const Tuning &t, const std::string &vectors) {
  Resources r;
  r.config = make_config(t, vectors);
  r.data = data_dir(t);
  r.stopwords = load_stopwords_file(r.data / "stopwords" / (r.config.language + ".txt"),
                                    r.config.language);
  r.table = std::make_unique<EmbeddingTable>(load_vectors_file(vectors, r.config.max_vocab));
  return r;
}

struct Rendered {
  std::string video_id;
  std::string json;
  std::string html;
  std::size_t entities = 0;
  std::size_t bubbles = 0;
  std::size_t segments = 0;
  std::vector<std::string> warnings;
};

Rendered render(const fs::path &video_path, const std::optional<fs::path> &tagged_path,
                const Resources &res, const FallbackTagger *fallback, const std::string &format) {
  VideoRecord record = load_video_bundle_file(video_path);
  TaggedDocument tagged;
  if (tagged_path) {
    tagged = parse_tagged_document(read_file(*tagged_path));
  } else {
    std::vector<std::string> texts;
    for (const auto &s : record.segments) texts.push_back(s.transcript);
    tagged = tag_segments(*fallback, texts);
  }
  SummaryDiagnostics diag;
  SummaryVisualization viz =
      summarize(record, tagged, *res.table, res.stopwords, res.config, &diag);
  Rendered r;
  r.video_id = viz.video_id;
  if (format != "html") r.json = emit_json(viz);
  if (format != "json") r.html = emit_html(viz);
  r.entities = record.entities.size();
  r.bubbles = viz.bubbles.size();
  r.segments = record.segments.size();
  for (const auto &d : diag.dropped_entities) r.warnings.push_back("dropped entity " + d);
  return r;
}

void write_outputs(const fs::path &out_dir, const Rendered &r) {
  fs::create_directories(out_dir);
  if (!r.json.empty()) write_file(out_dir / (r.video_id + ".json"), r.json);
  if (!r.html.empty()) write_file(out_dir / (r.video_id + ".html"), r.html);
}

std::string summary_line(const Rendered &r) {
  return r.video_id + ": entities=" + std::to_string(r.entities) +
         " bubbles=" + std::to_string(r.bubbles) + " segments=" + std::to_string(r.segments);
}

// ---------------------------------------------------------------------------

int cmd_query(const std::string &rdf, const std::string &asr_iri, const std::string &oa_ns,
              const std::string &dcterms_ns, std::ostream &out, std::ostream &err) {
  TripleSet store;
  try {
    store = parse_ntriples(read_file(rdf));
  } catch (const ParseError &e) {
    err << rdf << ":" << e.line() << ": " << e.reason() << "\n";
    return kExitInputError;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  AnnotationVocabulary vocab{oa_ns + "annotatedBy", oa_ns + "hasTarget", dcterms_ns + "isPartOf"};
  for (const std::string &url : query_videos_with_asr(store, asr_iri, vocab)) out << url << "\n";
  return kExitOk;
}

int cmd_summarize(const std::string &video, const std::string &tagged, const std::string &vectors,
                  const std::string &out_dir, Tuning &t, std::ostream &out, std::ostream &err) {
  Resources res = load_resources(t, vectors);
  const FallbackTagger *fallback = tagged.empty() ? &res.fallback_tagger() : nullptr;
  std::optional<fs::path> tagged_path;
  if (!tagged.empty()) tagged_path = tagged;
  Rendered r = render(video, tagged_path, res, fallback, t.format);
  for (const auto &w : r.warnings) err << "warning: " << r.video_id << ": " << w << "\n";
  write_outputs(out_dir, r);
  out << summary_line(r) << "\n";
  return kExitOk;
}

struct ManifestEntry {
  fs::path video;
  std::optional<fs::path> tagged;
  std::string problem;
};

std::vector<ManifestEntry> read_manifest(const fs::path &manifest) {
  std::vector<ManifestEntry> entries;
  std::istringstream in(read_file(manifest));
  fs::path base = manifest.parent_path();
  auto resolve = [&](const std::string &p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    ManifestEntry e;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      e.video = line;
      e.problem = "manifest line " + std::to_string(line_no) +
                  " must be \"video_json_path<TAB>tagged_txt_path\"";
    } else {
      e.video = resolve(line.substr(0, tab));
      e.tagged = resolve(line.substr(tab + 1));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

int cmd_batch(const std::string &manifest, const std::string &vectors, const std::string &out_dir,
              std::size_t jobs, Tuning &t, std::ostream &out, std::ostream &err) {
  std::vector<ManifestEntry> entries = read_manifest(manifest);
  Resources res = load_resources(t, vectors);

  struct Outcome {
    std::optional<Rendered> rendered;
    std::string error;
  };
  std::vector<Outcome> outcomes(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const ManifestEntry &e = entries[i];
      if (!e.problem.empty()) {
        outcomes[i].error = e.problem;
        continue;
      }
      try {
        outcomes[i].rendered = render(e.video, e.tagged, res, nullptr, t.format);
      } catch (const std::exception &ex) {
        outcomes[i].error = ex.what();
      }
    }
  };
  std::size_t threads = std::max<std::size_t>(1, std::min(jobs, entries.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  // Written in manifest order so the result never depends on scheduling.
  std::size_t ok = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome &o = outcomes[i];
    if (o.rendered) {
      try {
        write_outputs(out_dir, *o.rendered);
        for (const auto &w : o.rendered->warnings) {
          err << "warning: " << o.rendered->video_id << ": " << w << "\n";
        }
        out << summary_line(*o.rendered) << "\n";
        ++ok;
        continue;
      } catch (const std::exception &ex) {
        o.error = ex.what();
      }
    }
    err << "warning: skipping " << entries[i].video.string() << ": " << o.error << "\n";
  }
  return ok > 0 ? kExitOk : kExitEmpty;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Visual summaries of lecture videos from their transcripts and key entities",
               "scholiview"};
  app.require_subcommand(1);

  std::string rdf;
  std::string asr_iri;
  std::string oa_ns = "http://w3.org/ns/oa#";
  std::string dcterms_ns = "http://purl.org/dc/terms/";
  auto *query = app.add_subcommand("query", "list videos that carry ASR annotations");
  query->add_option("--rdf", rdf, "N-Triples metadata file")->required();
  query->add_option("--asr-iri", asr_iri, "IRI of the speech recognition annotator")->required();
  query->add_option("--oa-namespace", oa_ns, "namespace of annotatedBy/hasTarget")
      ->capture_default_str();
  query->add_option("--dcterms-namespace", dcterms_ns, "namespace of isPartOf")
      ->capture_default_str();

  std::string video;
  std::string tagged;
  std::string vectors;
  std::string out_dir;
  Tuning summarize_tuning;
  auto *summarize_cmd = app.add_subcommand("summarize", "summarize one video");
  summarize_cmd->add_option("--video", video, "video bundle JSON")->required();
  summarize_cmd->add_option("--tagged", tagged,
                            "POS-tagged transcript, one line per segment "
                            "(default: tag the bundle transcript with the built-in tagger)");
  summarize_cmd->add_option("--vectors", vectors, "word vectors in .vec text format")->required();
  summarize_cmd->add_option("--out", out_dir, "output directory")->required();
  add_tuning(summarize_cmd, summarize_tuning);

  std::string manifest;
  std::size_t jobs = 1;
  Tuning batch_tuning;
  auto *batch = app.add_subcommand("batch", "summarize every video listed in a manifest");
  batch->add_option("--manifest", manifest, "lines of video_json_path<TAB>tagged_txt_path")
      ->required();
  batch->add_option("--vectors", vectors, "word vectors in .vec text format")->required();
  batch->add_option("--out", out_dir, "output directory")->required();
  batch->add_option("--jobs", jobs, "parallel workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_tuning(batch, batch_tuning);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("scholiview");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "usage error: " << e.what() << "\n";
    err << "run 'scholiview --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (query->parsed()) return cmd_query(rdf, asr_iri, oa_ns, dcterms_ns, out, err);
    if (summarize_cmd->parsed()) {
      return cmd_summarize(video, tagged, vectors, out_dir, summarize_tuning, out, err);
    }
    if (batch->parsed()) return cmd_batch(manifest, vectors, out_dir, jobs, batch_tuning, out, err);
  } catch (const std::invalid_argument &e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EmptySummary &e) {
    err << "error: " << e.what() << "\n";
    return kExitEmpty;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitUsage;
}

}  // namespace scholiview::cli
