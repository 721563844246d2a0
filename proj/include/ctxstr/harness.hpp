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

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctxstr/adapters.hpp"
#include "ctxstr/gate.hpp"
#include "ctxstr/localizer.hpp"
#include "ctxstr/manifest.hpp"

namespace ctxstr {

struct PipelineConfig {
  LocalizerConfig loc;
  GateConfig gate;
  ImagePolicy image_policy = ImagePolicy::any;
  DescriptionLength description_length = DescriptionLength::medium;
  int workers = 1;

  void validate() const;
};

struct AdapterCalls {
  int segment = 0;
  int recognize = 0;
  int caption = 0;
  int embed = 0;
  int fallback = 0;
  friend bool operator==(const AdapterCalls&, const AdapterCalls&) = default;
};

// Everything the model roles produced for one image, before gating. Ablations
// re-gate these without calling recognizer, captioner or embedder again.
struct ImageCandidates {
  std::string image_id;
  SourceImageRef image;
  std::vector<std::string> ground_truth;
  std::vector<TextBlock> blocks;
  NormalizedText t1;
  NormalizedText t2;
  std::vector<NormalizedText> t3;  // per block
  std::optional<Embedding> e1;
  std::optional<Embedding> e2;
  std::vector<Embedding> e3;  // per block
  std::string embedder;
  AdapterCalls calls;
  std::vector<std::string> warnings;
  std::optional<std::string> error;
};

struct EvalRecord {
  std::string image_id;
  std::vector<TextBlock> blocks;
  std::vector<CandidateTexts> candidates;    // per scored block
  std::vector<ScoreBreakdown> breakdowns;    // per scored block
  std::vector<RoutingDecision> decisions;    // per scored block
  bool image_fallback = false;
  std::vector<std::string> final_texts;
  std::vector<std::string> ground_truth;
  AdapterCalls calls;
  std::string embedder;
  std::vector<std::string> warnings;
  std::optional<std::string> error;  // set when a required adapter failed
};

struct MetricsReport {
  std::string label;
  std::int64_t images = 0;
  std::int64_t failed_images = 0;
  std::int64_t ground_truth_instances = 0;
  std::int64_t matched = 0;
  double accuracy = 0.0;
  std::int64_t gated_units = 0;
  std::int64_t cbr = 0;              // confident decisions
  std::int64_t fallbacks = 0;        // fallback decisions
  std::int64_t false_positives = 0;  // confident and wrong
  std::int64_t image_fallbacks = 0;  // images routed to the fallback recognizer
  std::int64_t fallback_calls = 0;   // fallback adapter invocations
};

struct MetricsRow {
  GateConfig gate;
  MetricsReport metrics;
};

enum class Scenario { none, wrong, correct };
std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view s);

inline constexpr const char* kDefaultDecoy =
    "a bowl of ripe bananas and oranges on a wooden kitchen table";

// Runs segmentation, localization, recognition, captioning and embedding for
// one image. `t2_override` replaces the description (the captioner is then
// not called). Adapter failures land in `error`; nothing is thrown.
ImageCandidates collect_candidates(const ManifestEntry& entry, const PipelineConfig& cfg,
                                   const AdapterSet& adapters,
                                   const std::optional<std::string>& t2_override = std::nullopt);

// Scores and routes every block, aggregates per image and calls the fallback
// recognizer at most once, only when the image is routed to it.
EvalRecord decide(const ImageCandidates& candidates, const GateConfig& gate,
                  ImagePolicy policy, FallbackRecognizer& fallback);

// One record per manifest entry, in manifest order, computed on up to
// cfg.workers threads.
std::vector<EvalRecord> run_pipeline(const std::vector<ManifestEntry>& manifest,
                                     const PipelineConfig& cfg, const AdapterSet& adapters);

std::vector<ImageCandidates> collect_all(const std::vector<ManifestEntry>& manifest,
                                         const PipelineConfig& cfg, const AdapterSet& adapters,
                                         const std::optional<std::string>& t2_override = {});
std::vector<EvalRecord> decide_all(const std::vector<ImageCandidates>& cached,
                                   const GateConfig& gate, ImagePolicy policy,
                                   FallbackRecognizer& fallback, int workers);

// Accuracy is greedy one-to-one exact matching of normalized final texts
// against the image's ground truth; a confident block is a false positive when
// its text matches no ground-truth string of its image.
MetricsReport compute_metrics(const std::vector<EvalRecord>& records);

// One row per grid entry; candidates are collected once and re-gated.
std::vector<MetricsRow> ablate(const std::vector<ManifestEntry>& manifest,
                               const PipelineConfig& cfg, const AdapterSet& adapters,
                               const std::vector<GateConfig>& grid);

// Ablation grid: one "(alpha, beta, tau)" triple per line; parentheses,
// commas and whitespace separate numbers, '#' starts a comment. Every entry is
// validated as a GateConfig.
std::vector<GateConfig> parse_grid(const std::string& text);
std::vector<GateConfig> load_grid(const std::filesystem::path& path);

struct ScenarioResult {
  MetricsReport metrics;
  std::vector<EvalRecord> records;
};

// none: description "", wrong: `decoy`, correct: the recorded description.
ScenarioResult context_scenarios(const std::vector<ManifestEntry>& manifest,
                                 const PipelineConfig& cfg, const AdapterSet& adapters,
                                 Scenario scenario, const std::string& decoy = kDefaultDecoy);

}  // namespace ctxstr
