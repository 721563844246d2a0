// Copyright 2026 The ctxstr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctxstr/harness.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ctxstr/error.hpp"

namespace ctxstr {

void PipelineConfig::validate() const {
  loc.validate();
  gate.validate();
  if (workers < 1) throw ValidationError("workers must be >= 1, got " + std::to_string(workers));
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::none: return "none";
    case Scenario::wrong: return "wrong";
    case Scenario::correct: return "correct";
  }
  return "correct";
}

Scenario parse_scenario(std::string_view s) {
  if (s == "none") return Scenario::none;
  if (s == "wrong") return Scenario::wrong;
  if (s == "correct") return Scenario::correct;
  throw ValidationError("scenario must be none|wrong|correct, got '" + std::string(s) + "'");
}

ImageCandidates collect_candidates(const ManifestEntry& entry, const PipelineConfig& cfg,
                                   const AdapterSet& adapters,
                                   const std::optional<std::string>& t2_override) {
  ImageCandidates c;
  c.image_id = entry.image_id;
  c.image.image_id = entry.image_id;
  c.ground_truth = entry.ground_truth;
  try {
    ++c.calls.segment;
    const BinaryMask mask = adapters.segmenter->segment(entry);
    c.image.width = mask.width();
    c.image.height = mask.height();
    c.blocks = localize(mask, cfg.loc);
    if (c.blocks.empty()) return c;  // nothing to gate

    c.embedder = adapters.embedder->name_for(entry.image_id);
    ++c.calls.recognize;
    c.t1 = normalize(adapters.recognizer->recognize(c.image, std::nullopt));
    if (t2_override) {
      c.t2 = normalize(*t2_override);
    } else {
      ++c.calls.caption;
      auto caption = adapters.captioner->caption(c.image, cfg.description_length);
      if (caption.warning) c.warnings.push_back(*caption.warning);
      c.t2 = normalize(caption.text);
    }
    for (const auto& block : c.blocks) {
      ++c.calls.recognize;
      c.t3.push_back(normalize(adapters.recognizer->recognize(c.image, block)));
    }

    auto& embedder = *adapters.embedder;
    c.calls.embed += 2;
    c.e1 = embedder.embed(c.t1, {entry.image_id, "T1"});
    c.e2 = embedder.embed(c.t2, {entry.image_id, "T2"});
    for (const auto& block : c.blocks) {
      ++c.calls.embed;
      c.e3.push_back(embedder.embed(c.t3[block.rank], {entry.image_id,
                                                        "T3@" + std::to_string(block.rank)}));
    }
  } catch (const Error& e) {
    c.error = e.what();
  }
  return c;
}

EvalRecord decide(const ImageCandidates& c, const GateConfig& gate, ImagePolicy policy,
                  FallbackRecognizer& fallback) {
  EvalRecord r;
  r.image_id = c.image_id;
  r.blocks = c.blocks;
  r.ground_truth = c.ground_truth;
  r.calls = c.calls;
  r.embedder = c.embedder;
  r.warnings = c.warnings;
  r.error = c.error;
  if (c.error) return r;

  try {
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
      CandidateTexts texts{c.t1, c.t2, c.t3[i]};
      auto breakdown = score(texts, *c.e1, *c.e2, c.e3[i], gate);
      r.decisions.push_back(route(breakdown, gate));
      r.breakdowns.push_back(std::move(breakdown));
      r.candidates.push_back(std::move(texts));
    }
    r.image_fallback = image_falls_back(r.decisions, policy);
    if (r.image_fallback) {
      ++r.calls.fallback;
      r.final_texts = fallback.fallback_recognize(c.image);
    } else {
      for (const auto& d : r.decisions) {
        if (d.outcome == Outcome::confident) r.final_texts.push_back(d.final_text.str());
      }
    }
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<ImageCandidates> collect_all(const std::vector<ManifestEntry>& manifest,
                                         const PipelineConfig& cfg, const AdapterSet& adapters,
                                         const std::optional<std::string>& t2_override) {
  cfg.validate();
  std::vector<ImageCandidates> out(manifest.size());
  const auto n = static_cast<std::int64_t>(manifest.size());
#pragma omp parallel for num_threads(cfg.workers) schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = collect_candidates(manifest[i], cfg, adapters, t2_override);
  }
  return out;
}

std::vector<EvalRecord> decide_all(const std::vector<ImageCandidates>& cached,
                                   const GateConfig& gate, ImagePolicy policy,
                                   FallbackRecognizer& fallback, int workers) {
  gate.validate();
  std::vector<EvalRecord> out(cached.size());
  const auto n = static_cast<std::int64_t>(cached.size());
#pragma omp parallel for num_threads(std::max(1, workers)) schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) out[i] = decide(cached[i], gate, policy, fallback);
  return out;
}

std::vector<EvalRecord> run_pipeline(const std::vector<ManifestEntry>& manifest,
                                     const PipelineConfig& cfg, const AdapterSet& adapters) {
  return decide_all(collect_all(manifest, cfg, adapters), cfg.gate, cfg.image_policy,
                    *adapters.fallback, cfg.workers);
}

namespace {

// Greedy one-to-one: each text consumes the first equal, unconsumed truth.
// Returns per-text match flags.
std::vector<bool> greedy_match(const std::vector<NormalizedText>& texts,
                               const std::vector<NormalizedText>& truth) {
  std::vector<bool> used(truth.size(), false);
  std::vector<bool> matched(texts.size(), false);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (!used[j] && truth[j] == texts[i]) {
        used[j] = true;
        matched[i] = true;
        break;
      }
    }
  }
  return matched;
}

std::vector<NormalizedText> normalize_all(const std::vector<std::string>& v) {
  std::vector<NormalizedText> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(normalize(s));
  return out;
}

}  // namespace

MetricsReport compute_metrics(const std::vector<EvalRecord>& records) {
  MetricsReport m;
  for (const auto& r : records) {
    ++m.images;
    if (r.error) ++m.failed_images;
    const auto truth = normalize_all(r.ground_truth);
    m.ground_truth_instances += static_cast<std::int64_t>(truth.size());
    const auto finals = greedy_match(normalize_all(r.final_texts), truth);
    m.matched += std::count(finals.begin(), finals.end(), true);

    std::vector<NormalizedText> confident;
    for (const auto& d : r.decisions) {
      ++m.gated_units;
      if (d.outcome == Outcome::confident) {
        ++m.cbr;
        confident.push_back(d.final_text);
      } else {
        ++m.fallbacks;
      }
    }
    const auto ok = greedy_match(confident, truth);
    m.false_positives += std::count(ok.begin(), ok.end(), false);
    m.image_fallbacks += r.image_fallback ? 1 : 0;
    m.fallback_calls += r.calls.fallback;
  }
  m.accuracy = m.ground_truth_instances == 0
                   ? 1.0
                   : static_cast<double>(m.matched) / static_cast<double>(m.ground_truth_instances);
  return m;
}

std::vector<MetricsRow> ablate(const std::vector<ManifestEntry>& manifest,
                               const PipelineConfig& cfg, const AdapterSet& adapters,
                               const std::vector<GateConfig>& grid) {
  for (const auto& g : grid) g.validate();
  const auto cached = collect_all(manifest, cfg, adapters);
  std::vector<MetricsRow> rows;
  rows.reserve(grid.size());
  for (const auto& g : grid) {
    rows.push_back({g, compute_metrics(decide_all(cached, g, cfg.image_policy, *adapters.fallback,
                                                  cfg.workers))});
  }
  return rows;
}

std::vector<GateConfig> parse_grid(const std::string& text) {
  std::vector<GateConfig> grid;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    std::vector<double> values;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw ValidationError("grid line " + std::to_string(lineno) + ": '" + tok +
                              "' is not a number");
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    if (values.size() != 3) {
      throw ValidationError("grid line " + std::to_string(lineno) +
                            ": expected alpha, beta, tau");
    }
    GateConfig g;
    g.alpha = values[0];
    g.beta = values[1];
    g.tau = values[2];
    try {
      g.validate();
    } catch (const ValidationError& e) {
      throw ValidationError("grid line " + std::to_string(lineno) + ": " + e.what());
    }
    grid.push_back(g);
  }
  return grid;
}

std::vector<GateConfig> load_grid(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open grid file " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_grid(buf.str());
}

ScenarioResult context_scenarios(const std::vector<ManifestEntry>& manifest,
                                 const PipelineConfig& cfg, const AdapterSet& adapters,
                                 Scenario scenario, const std::string& decoy) {
  std::optional<std::string> t2;
  if (scenario == Scenario::none) t2 = "";
  if (scenario == Scenario::wrong) t2 = decoy;
  ScenarioResult result;
  result.records = decide_all(collect_all(manifest, cfg, adapters, t2), cfg.gate,
                              cfg.image_policy, *adapters.fallback, cfg.workers);
  result.metrics = compute_metrics(result.records);
  result.metrics.label = std::string(to_string(scenario));
  return result;
}

}  // namespace ctxstr
