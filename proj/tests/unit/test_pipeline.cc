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


#include "scholiview/pipeline.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.h"

using namespace scholiview;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SCHOLIVIEW_TEST_FIXTURES;
const fs::path kData = SCHOLIVIEW_TEST_DATA;

EmbeddingTable small_table() {
  return EmbeddingTable(3, {{"Speicher", {1.0f, 0.0f, 0.0f}},
                            {"Daten", {0.0f, 2.0f, 0.0f}},
                            {"Liste", {0.0f, 0.0f, 4.0f}},
                            {"Baum", {1.0f, 1.0f, 1.0f}}});
}

StopwordList german() { return load_stopwords_file(kData / "stopwords" / "de.txt", "de"); }

VideoRecord record_with(std::vector<KeyEntity> entities, std::size_t segments = 2) {
  VideoRecord r;
  r.video_id = "test-01";
  r.url = "https://example.org/v/test-01";
  r.title = "Test";
  r.language = "de";
  for (std::size_t i = 0; i < segments; ++i) {
    r.segments.push_back({static_cast<std::int64_t>(i * 60), static_cast<std::int64_t>(i * 60 + 60), "x"});
  }
  r.entities = std::move(entities);
  return r;
}

TaggedDocument two_segments() {
  return parse_tagged_document("Speicher/NOUN und/CCONJ Daten/NOUN\nListe/NOUN mit/ADP Baum/NOUN");
}

PipelineConfig config() {
  PipelineConfig c;
  c.embedding_path = "small.vec";
  return c;
}

std::string unescape_script(std::string s) {
  for (std::size_t at; (at = s.find("<\\/")) != std::string::npos;) s.replace(at, 3, "</");
  return s;
}

std::size_t count(const std::string &hay, const std::string &needle) {
  std::size_t n = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("entity vectors") {
  auto t = small_table();
  CHECK(entity_vector(t, "Speicher").values == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(entity_vector(t, "Liste <Informatik>").values == std::vector<double>{0.0, 0.0, 4.0});
  CHECK(entity_vector(t, "Speicher Daten").values == std::vector<double>{0.5, 1.0, 0.0});
  CHECK(entity_vector(t, "Speicher, Daten").values == std::vector<double>{0.5, 1.0, 0.0});
  CHECK_THROWS_AS(entity_vector(t, "Xqzv"), OovUnresolvable);
  CHECK_THROWS_AS(entity_vector(t, "<nur Qualifier>"), OovUnresolvable);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(config().validate());
  auto c = config();
  c.r_max = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = config();
  c.min_entity_frequency = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = config();
  c.rank.top_k = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("summarize produces one bubble per surviving entity") {
  auto rec = record_with({{"Speicher", EntitySource::kAsr, 4},
                          {"Daten", EntitySource::kOcr, 1},
                          {"Baum", EntitySource::kVisualConcept, 2}});
  auto viz = summarize(rec, two_segments(), small_table(), german(), config());
  REQUIRE(viz.bubbles.size() == 3);
  CHECK(viz.video_id == "test-01");
  CHECK(viz.bubbles[0].label == "Speicher");
  CHECK(viz.bubbles[0].radius == doctest::Approx(1.0));
  CHECK(viz.bubbles[1].radius == doctest::Approx(0.5));
  CHECK(viz.bubbles[2].radius == doctest::Approx(std::sqrt(0.5)));
  for (const auto &b : viz.bubbles) {
    CHECK(b.x >= 0.0);
    CHECK(b.x <= 1.0);
    CHECK(b.y >= 0.0);
    CHECK(b.y <= 1.0);
  }
  REQUIRE(viz.keyphrase_table.size() == 2);
  CHECK(viz.keyphrase_table[1].segment_start == 60);
  CHECK(viz.keyphrase_table[1].segment_end == 120);
  CHECK_FALSE(viz.keyphrase_table[0].keyphrases.empty());
  CHECK(viz.generator_config == config());
}

TEST_CASE("summarize filtering") {
  auto rec = record_with({{"Speicher", EntitySource::kAsr, 3}, {"Xqzv", EntitySource::kOcr, 5}});
  SummaryDiagnostics diag;
  auto viz = summarize(rec, two_segments(), small_table(), german(), config(), &diag);
  REQUIRE(viz.bubbles.size() == 1);
  CHECK(viz.bubbles[0].label == "Speicher");
  REQUIRE(diag.dropped_entities.size() == 1);
  CHECK(diag.dropped_entities[0].rfind("Xqzv: ", 0) == 0);

  auto keep = config();
  keep.drop_oov_entities = false;
  CHECK_THROWS_AS(summarize(rec, two_segments(), small_table(), german(), keep), OovUnresolvable);

  auto freq = config();
  freq.min_entity_frequency = 4;
  auto rare = record_with({{"Speicher", EntitySource::kAsr, 3}, {"Daten", EntitySource::kAsr, 4}});
  auto filtered = summarize(rare, two_segments(), small_table(), german(), freq);
  REQUIRE(filtered.bubbles.size() == 1);
  CHECK(filtered.bubbles[0].label == "Daten");

  CHECK_THROWS_AS(summarize(record_with({}), two_segments(), small_table(), german(), config()), EmptySummary);
  CHECK_THROWS_AS(summarize(record_with({{"Xqzv", EntitySource::kAsr, 1}}), two_segments(), small_table(),
                            german(), config()),
                  EmptySummary);
  CHECK_THROWS_AS(summarize(record_with({{"Speicher", EntitySource::kAsr, 1}}, 3), two_segments(),
                            small_table(), german(), config()),
                  SchemaError);
}

TEST_CASE("json round trip is a fixpoint") {
  auto rec = record_with({{"Speicher", EntitySource::kAsr, 4}, {"Liste \"A\" </script>", EntitySource::kOcr, 1}});
  auto viz = summarize(rec, two_segments(), small_table(), german(), config());
  std::string once = emit_json(viz);
  auto back = parse_summary_json(once);
  CHECK(emit_json(back) == once);
  CHECK(back.generator_config == viz.generator_config);
  CHECK(back.bubbles.size() == viz.bubbles.size());
  CHECK(once.find("\"schema\": \"scholiview/1\"") != std::string::npos);

  auto empty_table = viz;
  for (auto &row : empty_table.keyphrase_table) row.keyphrases.clear();
  empty_table.keyphrase_table.clear();
  CHECK(emit_json(empty_table).find("\"keyphrase_table\": []") != std::string::npos);

  CHECK_THROWS_AS(parse_summary_json("{\"schema\": \"scholiview/0\"}"), SchemaError);
  CHECK_THROWS_AS(parse_summary_json("not json"), SchemaError);
}

TEST_CASE("config reals survive the round trip exactly") {
  auto rec = record_with({{"Speicher", EntitySource::kAsr, 4}});
  auto c = config();
  c.rank.alpha = 0.1 + 0.2;
  c.rank.cluster_threshold = 1.0 / 3.0;
  c.r_max = 2.5;
  auto viz = summarize(rec, two_segments(), small_table(), german(), c);
  CHECK(parse_summary_json(emit_json(viz)).generator_config == c);
}

TEST_CASE("html embeds the json document once") {
  auto rec = record_with({{"Speicher", EntitySource::kAsr, 4}, {"Daten </script> <b>", EntitySource::kOcr, 1}});
  auto viz = summarize(rec, two_segments(), small_table(), german(), config());
  std::string html = emit_html(viz);
  CHECK(count(html, "id=\"scholiview-data\"") == 1);
  CHECK(count(html, "<div id=\"scholiview-mount\">") == 1);
  const std::string open = "<script type=\"application/json\" id=\"scholiview-data\">";
  auto begin = html.find(open) + open.size();
  auto end = html.find("</script>", begin);
  CHECK(unescape_script(html.substr(begin, end - begin)) == emit_json(viz));
  std::string markup = html.substr(0, begin) + html.substr(end);
  CHECK(markup.find("<b>") == std::string::npos);
  CHECK(markup.find("Daten &lt;/script&gt; &lt;b&gt;") != std::string::npos);
  CHECK(html.find("no keyphrases") == std::string::npos);

  for (auto &row : viz.keyphrase_table) row.keyphrases.clear();
  CHECK(emit_html(viz).find("no keyphrases") != std::string::npos);
}

TEST_CASE("golden fixture through the library") {
  const fs::path dir = kFixtures / "golden";
  auto rec = load_video_bundle_file(dir / "video.json");
  auto tagged = parse_tagged_document(testgen::read_bytes(dir / "transcript.tagged.txt"));
  auto c = config();
  c.embedding_path = "toy_vectors.vec";
  auto table = load_vectors_file(dir / "toy_vectors.vec", c.max_vocab);
  auto viz = summarize(rec, tagged, table, german(), c);
  CHECK(emit_json(viz) == testgen::read_bytes(dir / "expected.json"));
}
