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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "scholiview/utf8.h"

namespace scholiview {

void PipelineConfig::validate() const {
  rank.validate();
  if (language != "de" && language != "en") {
    throw std::invalid_argument("unsupported language \"" + language + "\" (use de or en)");
  }
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw std::invalid_argument("r_max must be positive");
  if (min_entity_frequency < 1) throw std::invalid_argument("min_entity_frequency must be >= 1");
  if (max_vocab && *max_vocab == 0) throw std::invalid_argument("max_vocab must be positive");
}

// ---------------------------------------------------------------------------
// Summarization

namespace {

// Drops every "<...>" span. An unmatched '<' is kept as ordinary text.
std::string strip_qualifiers(std::string_view label) {
  std::string out;
  std::size_t i = 0;
  while (i < label.size()) {
    if (label[i] == '<') {
      auto close = label.find('>', i + 1);
      if (close != std::string_view::npos) {
        out.push_back(' ');
        i = close + 1;
        continue;
      }
    }
    out.push_back(label[i++]);
  }
  return out;
}

bool all_punct(std::string_view token) {
  auto cps = utf8::decode(token);
  return std::all_of(cps.begin(), cps.end(), [](char32_t c) { return utf8::is_punct(c); });
}

}  // namespace

WordVector entity_vector(const EmbeddingTable &table, std::string_view label) {
  if (utf8::trim(label).empty()) throw std::invalid_argument("entity_vector: empty label");
  WordVector mean{std::vector<double>(table.dimension(), 0.0)};
  std::size_t used = 0;
  for (const std::string &token : tokenize(strip_qualifiers(label))) {
    if (all_punct(token)) continue;
    try {
      WordVector v = embed(table, token);
      for (std::size_t d = 0; d < v.size(); ++d) mean.values[d] += v[d];
      ++used;
    } catch (const OovUnresolvable &) {
    }
  }
  if (used == 0) throw OovUnresolvable(std::string(label));
  if (used > 1) {
    for (double &x : mean.values) x /= static_cast<double>(used);
  }
  return mean;
}

SummaryVisualization summarize(const VideoRecord &record, const TaggedDocument &tagged,
                               const EmbeddingTable &table, const StopwordList &stopwords,
                               const PipelineConfig &config, SummaryDiagnostics *diagnostics) {
  config.validate();
  if (tagged.segments.size() != record.segments.size()) {
    throw SchemaError("tagged transcript has " + std::to_string(tagged.segments.size()) +
                      " segments, video \"" + record.video_id + "\" has " +
                      std::to_string(record.segments.size()));
  }

  std::vector<KeyEntity> kept;
  std::vector<WordVector> vectors;
  for (const KeyEntity &e : record.entities) {
    if (e.frequency < config.min_entity_frequency) continue;
    try {
      vectors.push_back(entity_vector(table, e.label));
      kept.push_back(e);
    } catch (const OovUnresolvable &err) {
      if (!config.drop_oov_entities) throw;
      if (diagnostics) diagnostics->dropped_entities.push_back(e.label + ": " + err.what());
    }
  }
  if (kept.empty()) throw EmptySummary(record.video_id);

  DenseMatrix data(kept.size(), table.dimension());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::copy(vectors[i].values.begin(), vectors[i].values.end(), data.row(i).begin());
  }
  Projection2D projection = pca_2d(data);

  SummaryVisualization viz;
  viz.video_id = record.video_id;
  viz.url = record.url;
  viz.title = record.title;
  viz.bubbles = bubble_layout(kept, projection.coordinates, config.r_max);

  KeyphraseResult keyphrases = extract(tagged, config.rank, stopwords);
  for (const auto &seg : keyphrases.per_segment) {
    const TimeSegment &ts = record.segments[seg.segment_index];
    KeyphraseRow row{ts.start, ts.end, {}};
    for (const auto &entry : seg.keyphrases) row.keyphrases.push_back(entry.surface_form);
    viz.keyphrase_table.push_back(std::move(row));
  }
  viz.generator_config = config;
  return viz;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

using nlohmann::json;

std::string quote(std::string_view s) {
  return json(std::string(s)).dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// Six decimals when that reproduces the value exactly.
std::string config_real(double v) {
  std::string s = fixed6(v);
  if (std::strtod(s.c_str(), nullptr) == v) return s;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string emit_config(const PipelineConfig &c) {
  const RankConfig &r = c.rank;
  std::string tags;
  for (PosTag t : r.allowed_tags) {
    if (!tags.empty()) tags += ", ";
    tags += quote(to_string(t));
  }
  std::string out = "{\n";
  auto field = [&out](std::string_view key, const std::string &value, bool last = false) {
    out += "    ";
    out += quote(key);
    out += ": ";
    out += value;
    out += last ? "\n" : ",\n";
  };
  field("alpha", config_real(r.alpha));
  field("cluster_threshold", config_real(r.cluster_threshold));
  field("linkage", quote(to_string(r.linkage)));
  field("top_k", std::to_string(r.top_k));
  field("damping", config_real(r.damping));
  field("pagerank_tol", config_real(r.pagerank_tol));
  field("pagerank_max_iters", std::to_string(r.pagerank_max_iters));
  field("allowed_tags", "[" + tags + "]");
  field("vectors", quote(c.embedding_path));
  field("language", quote(c.language));
  field("r_max", config_real(c.r_max));
  field("max_vocab", c.max_vocab ? std::to_string(*c.max_vocab) : "null");
  field("min_entity_frequency", std::to_string(c.min_entity_frequency));
  field("drop_oov_entities", c.drop_oov_entities ? "true" : "false", true);
  out += "  }";
  return out;
}

const json &member(const json &obj, const char *key) {
  if (!obj.is_object()) throw SchemaError(std::string("expected an object holding \"") + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

std::string emit_json(const SummaryVisualization &viz) {
  std::string out = "{\n";
  out += "  \"schema\": " + quote(kSchemaVersion) + ",\n";
  out += "  \"video_id\": " + quote(viz.video_id) + ",\n";
  out += "  \"url\": " + quote(viz.url) + ",\n";
  out += "  \"title\": " + quote(viz.title) + ",\n";

  out += "  \"bubbles\": [";
  for (std::size_t i = 0; i < viz.bubbles.size(); ++i) {
    const Bubble &b = viz.bubbles[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"label\": " + quote(b.label) + ", \"source\": " + quote(to_string(b.source)) +
           ", \"frequency\": " + std::to_string(b.frequency) + ", \"x\": " + fixed6(b.x) +
           ", \"y\": " + fixed6(b.y) + ", \"radius\": " + fixed6(b.radius) + "}";
  }
  out += viz.bubbles.empty() ? "],\n" : "\n  ],\n";

  out += "  \"keyphrase_table\": [";
  for (std::size_t i = 0; i < viz.keyphrase_table.size(); ++i) {
    const KeyphraseRow &row = viz.keyphrase_table[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"segment_start\": " + std::to_string(row.segment_start) +
           ", \"segment_end\": " + std::to_string(row.segment_end) + ", \"keyphrases\": [";
    for (std::size_t k = 0; k < row.keyphrases.size(); ++k) {
      if (k > 0) out += ", ";
      out += quote(row.keyphrases[k]);
    }
    out += "]}";
  }
  out += viz.keyphrase_table.empty() ? "],\n" : "\n  ],\n";

  out += "  \"generator_config\": " + emit_config(viz.generator_config) + "\n";
  out += "}\n";
  return out;
}

SummaryVisualization parse_summary_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (member(doc, "schema").get<std::string>() != kSchemaVersion) {
      throw SchemaError("unsupported schema \"" + member(doc, "schema").get<std::string>() + "\"");
    }
    SummaryVisualization viz;
    viz.video_id = member(doc, "video_id").get<std::string>();
    viz.url = member(doc, "url").get<std::string>();
    viz.title = member(doc, "title").get<std::string>();
    for (const json &b : member(doc, "bubbles")) {
      Bubble bubble;
      bubble.label = member(b, "label").get<std::string>();
      bubble.source = parse_entity_source(member(b, "source").get<std::string>());
      bubble.frequency = member(b, "frequency").get<std::int64_t>();
      bubble.x = member(b, "x").get<double>();
      bubble.y = member(b, "y").get<double>();
      bubble.radius = member(b, "radius").get<double>();
      viz.bubbles.push_back(std::move(bubble));
    }
    for (const json &r : member(doc, "keyphrase_table")) {
      KeyphraseRow row;
      row.segment_start = member(r, "segment_start").get<std::int64_t>();
      row.segment_end = member(r, "segment_end").get<std::int64_t>();
      row.keyphrases = member(r, "keyphrases").get<std::vector<std::string>>();
      viz.keyphrase_table.push_back(std::move(row));
    }
    const json &c = member(doc, "generator_config");
    PipelineConfig &cfg = viz.generator_config;
    cfg.rank.alpha = member(c, "alpha").get<double>();
    cfg.rank.cluster_threshold = member(c, "cluster_threshold").get<double>();
    if (member(c, "linkage").get<std::string>() != "average") {
      throw SchemaError("unsupported linkage \"" + member(c, "linkage").get<std::string>() + "\"");
    }
    cfg.rank.linkage = Linkage::kAverage;
    cfg.rank.top_k = member(c, "top_k").get<std::size_t>();
    cfg.rank.damping = member(c, "damping").get<double>();
    cfg.rank.pagerank_tol = member(c, "pagerank_tol").get<double>();
    cfg.rank.pagerank_max_iters = member(c, "pagerank_max_iters").get<std::size_t>();
    cfg.rank.allowed_tags.clear();
    for (const json &t : member(c, "allowed_tags")) {
      auto tag = parse_pos_tag(t.get<std::string>());
      if (!tag) throw SchemaError("unknown tag \"" + t.get<std::string>() + "\" in allowed_tags");
      cfg.rank.allowed_tags.insert(*tag);
    }
    cfg.embedding_path = member(c, "vectors").get<std::string>();
    cfg.language = member(c, "language").get<std::string>();
    cfg.r_max = member(c, "r_max").get<double>();
    const json &mv = member(c, "max_vocab");
    cfg.max_vocab = mv.is_null() ? std::nullopt : std::optional<std::size_t>(mv.get<std::size_t>());
    cfg.min_entity_frequency = member(c, "min_entity_frequency").get<std::int64_t>();
    cfg.drop_oov_entities = member(c, "drop_oov_entities").get<bool>();
    return viz;
  } catch (const json::exception &e) {
    throw SchemaError(std::string("malformed summary: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// HTML

namespace {

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Keeps "</script>" inside JSON strings from closing the data block.
std::string script_safe(std::string_view json_text) {
  std::string out;
  out.reserve(json_text.size());
  for (std::size_t i = 0; i < json_text.size(); ++i) {
    if (json_text[i] == '<' && i + 1 < json_text.size() && json_text[i + 1] == '/') {
      out += "<\\/";
      ++i;
    } else {
      out.push_back(json_text[i]);
    }
  }
  return out;
}

std::string format_time(std::int64_t seconds) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld:%02lld", static_cast<long long>(seconds / 60),
                static_cast<long long>(seconds % 60));
  return buf;
}

constexpr double kCanvas = 800.0;
constexpr double kMargin = 60.0;
constexpr double kLargestBubblePx = 56.0;

constexpr const char *kStyle = R"css(
body { font-family: system-ui, sans-serif; margin: 1.5rem; color: #222; }
header h1 { font-size: 1.3rem; margin: 0 0 .2rem 0; }
header a { color: #555; font-size: .85rem; }
#scholiview-frame { position: relative; display: inline-block; border: 1px solid #ccc; }
#scholiview-toolbar { position: absolute; top: 6px; right: 6px; }
#scholiview-toolbar button { margin-left: 2px; min-width: 2rem; }
#scholiview-mount svg { display: block; background: #fafafa; cursor: grab; }
circle.bubble { fill-opacity: .55; stroke: #333; stroke-width: 1; }
circle.bubble.src-ASR { fill: #4c78a8; }
circle.bubble.src-OCR { fill: #f58518; }
circle.bubble.src-VISUAL_CONCEPT { fill: #54a24b; }
circle.bubble.selected { stroke: #d62728; stroke-width: 3; }
text.label { font-size: 12px; text-anchor: middle; pointer-events: none; }
#scholiview-tooltip { position: absolute; display: none; background: #fff; border: 1px solid #888;
  padding: 2px 6px; font-size: .8rem; pointer-events: none; }
#scholiview-table table { border-collapse: collapse; margin-top: 1rem; }
#scholiview-table td, #scholiview-table th { border: 1px solid #ccc; padding: 3px 8px; text-align: left; }
#scholiview-table tr.highlight { background: #ffe9a8; }
.placeholder { color: #777; font-style: italic; }
)css";

constexpr const char *kScript = R"js(
(function () {
  var data = JSON.parse(document.getElementById('scholiview-data').textContent);
  var svg = document.querySelector('#scholiview-mount svg');
  var tip = document.getElementById('scholiview-tooltip');
  var size = svg.viewBox.baseVal.width;
  var view = { x: 0, y: 0, zoom: 1 };
  var selected = null;
  function apply() {
    var w = size / view.zoom;
    svg.setAttribute('viewBox', view.x + ' ' + view.y + ' ' + w + ' ' + w);
  }
  function zoomBy(f) {
    var z = Math.min(8, Math.max(0.25, view.zoom * f));
    var c = view.x + size / view.zoom / 2, d = view.y + size / view.zoom / 2;
    view.zoom = z;
    view.x = c - size / z / 2;
    view.y = d - size / z / 2;
    apply();
  }
  function select(label) {
    selected = label;
    svg.querySelectorAll('circle.bubble').forEach(function (c) {
      c.classList.toggle('selected', c.dataset.label === label);
    });
    document.querySelectorAll('#scholiview-table tr[data-row]').forEach(function (tr) {
      var row = data.keyphrase_table[+tr.dataset.row];
      var hit = label !== null && row.keyphrases.some(function (k) {
        return k.toLowerCase() === label.toLowerCase();
      });
      tr.classList.toggle('highlight', hit);
    });
  }
  svg.querySelectorAll('circle.bubble').forEach(function (c) {
    c.addEventListener('mousemove', function (e) {
      tip.textContent = c.dataset.label + ' (' + c.dataset.frequency + ')';
      tip.style.left = (e.offsetX + 12) + 'px';
      tip.style.top = (e.offsetY + 12) + 'px';
      tip.style.display = 'block';
    });
    c.addEventListener('mouseleave', function () { tip.style.display = 'none'; });
    c.addEventListener('click', function (e) { e.stopPropagation(); select(c.dataset.label); });
  });
  var drag = null;
  svg.addEventListener('mousedown', function (e) { drag = { x: e.clientX, y: e.clientY }; });
  window.addEventListener('mouseup', function () { drag = null; });
  svg.addEventListener('mousemove', function (e) {
    if (!drag) return;
    var k = size / view.zoom / svg.clientWidth;
    view.x -= (e.clientX - drag.x) * k;
    view.y -= (e.clientY - drag.y) * k;
    drag = { x: e.clientX, y: e.clientY };
    apply();
  });
  svg.addEventListener('click', function () { tip.style.display = 'none'; });
  svg.addEventListener('wheel', function (e) { e.preventDefault(); zoomBy(e.deltaY < 0 ? 1.25 : 0.8); });
  document.getElementById('sv-zoom-in').onclick = function () { zoomBy(1.25); };
  document.getElementById('sv-zoom-out').onclick = function () { zoomBy(0.8); };
  document.getElementById('sv-reset').onclick = function () {
    view = { x: 0, y: 0, zoom: 1 };
    apply();
    select(null);
  };
})();
)js";

}  // namespace

std::string emit_html(const SummaryVisualization &viz) {
  double largest = 0.0;
  for (const Bubble &b : viz.bubbles) largest = std::max(largest, b.radius);
  const double radius_scale = largest > 0.0 ? kLargestBubblePx / largest : 0.0;
  const double plot = kCanvas - 2.0 * kMargin;

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"" + html_escape(viz.generator_config.language) + "\">\n";
  out += "<head>\n<meta charset=\"utf-8\">\n<title>" + html_escape(viz.title) + "</title>\n";
  out += "<style>" + std::string(kStyle) + "</style>\n</head>\n<body>\n";
  out += "<header><h1>" + html_escape(viz.title) + "</h1><a href=\"" + html_escape(viz.url) +
         "\">" + html_escape(viz.url) + "</a></header>\n";

  out += "<div id=\"scholiview-frame\">\n";
  out += "<div id=\"scholiview-toolbar\"><button id=\"sv-zoom-in\" title=\"zoom in\">+</button>"
         "<button id=\"sv-zoom-out\" title=\"zoom out\">&minus;</button>"
         "<button id=\"sv-reset\" title=\"reset\">reset</button></div>\n";
  out += "<div id=\"scholiview-mount\">\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed6(kCanvas) + "\" height=\"" +
         fixed6(kCanvas) + "\" viewBox=\"0 0 " + fixed6(kCanvas) + " " + fixed6(kCanvas) + "\">\n";
  // Draw large bubbles first so small ones stay clickable.
  std::vector<std::size_t> order(viz.bubbles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return viz.bubbles[a].radius > viz.bubbles[b].radius;
  });
  for (std::size_t i : order) {
    const Bubble &b = viz.bubbles[i];
    double cx = kMargin + b.x * plot;
    double cy = kMargin + (1.0 - b.y) * plot;
    out += "<g><circle class=\"bubble src-" + std::string(to_string(b.source)) + "\" cx=\"" +
           fixed6(cx) + "\" cy=\"" + fixed6(cy) + "\" r=\"" + fixed6(b.radius * radius_scale) +
           "\" data-label=\"" + html_escape(b.label) + "\" data-frequency=\"" +
           std::to_string(b.frequency) + "\"></circle><text class=\"label\" x=\"" + fixed6(cx) +
           "\" y=\"" + fixed6(cy) + "\">" + html_escape(b.label) + "</text></g>\n";
  }
  out += "</svg>\n</div>\n<div id=\"scholiview-tooltip\"></div>\n</div>\n";

  out += "<section id=\"scholiview-table\">\n";
  bool any = std::any_of(viz.keyphrase_table.begin(), viz.keyphrase_table.end(),
                         [](const KeyphraseRow &r) { return !r.keyphrases.empty(); });
  if (!any) {
    out += "<p class=\"placeholder\">no keyphrases</p>\n";
  } else {
    out += "<table>\n<tr><th>segment</th><th>keyphrases</th></tr>\n";
    for (std::size_t i = 0; i < viz.keyphrase_table.size(); ++i) {
      const KeyphraseRow &row = viz.keyphrase_table[i];
      std::string phrases;
      for (const auto &k : row.keyphrases) {
        if (!phrases.empty()) phrases += ", ";
        phrases += html_escape(k);
      }
      out += "<tr data-row=\"" + std::to_string(i) + "\"><td>" + format_time(row.segment_start) +
             "&ndash;" + format_time(row.segment_end) + "</td><td>" + phrases + "</td></tr>\n";
    }
    out += "</table>\n";
  }
  out += "</section>\n";

  out += "<script type=\"application/json\" id=\"scholiview-data\">" +
         script_safe(emit_json(viz)) + "</script>\n";
  out += "<script>" + std::string(kScript) + "</script>\n";
  out += "</body>\n</html>\n";
  return out;
}

}  // namespace scholiview
