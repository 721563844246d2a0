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

#include "ctxstr/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ctxstr/error.hpp"
#include "json.hpp"

namespace ctxstr::report {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json block_json(const TextBlock& b) {
  return {{"rank", b.rank},         {"x_min", b.bbox.x_min}, {"y_min", b.bbox.y_min},
          {"x_max", b.bbox.x_max},  {"y_max", b.bbox.y_max}, {"area", b.area},
          {"label", b.source_component}};
}

ordered_json scores_json(const ScoreBreakdown& s) {
  return {{"s1", s.s1},
          {"s3", s.s3},
          {"l1", s.l1},
          {"l3", s.l3},
          {"selected", std::string(to_string(s.selected))},
          {"s_selected", s.s_selected},
          {"l_selected", s.l_selected},
          {"confidence", s.confidence}};
}

ordered_json gate_json(const GateConfig& g) {
  return {{"alpha", g.alpha},
          {"beta", g.beta},
          {"tau", g.tau},
          {"lexical", std::string(to_string(g.lexical))}};
}

}  // namespace

std::string localization_json(const std::string& image_id, const std::vector<TextBlock>& blocks) {
  ordered_json j;
  j["image_id"] = image_id;
  j["blocks"] = ordered_json::array();
  for (const auto& b : blocks) j["blocks"].push_back(block_json(b));
  return j.dump();
}

std::string breakdown_json(const RoutingDecision& decision, const GateConfig& gate) {
  ordered_json j = scores_json(decision.breakdown);
  j["selected_text"] = decision.breakdown.selected_text.str();
  j["decision"] = std::string(to_string(decision.outcome));
  if (decision.outcome == Outcome::confident) j["final_text"] = decision.final_text.str();
  j["gate"] = gate_json(gate);
  return j.dump();
}

std::string trace_json(const EvalRecord& r) {
  ordered_json j;
  j["image_id"] = r.image_id;
  j["embedder"] = r.embedder;
  j["blocks"] = ordered_json::array();
  for (const auto& b : r.blocks) j["blocks"].push_back(block_json(b));
  if (!r.candidates.empty()) {
    j["t1"] = r.candidates.front().t1.str();
    j["t2"] = r.candidates.front().t2.str();
  }
  j["scored"] = ordered_json::array();
  for (std::size_t i = 0; i < r.decisions.size(); ++i) {
    ordered_json s;
    s["rank"] = r.blocks[i].rank;
    s["t3"] = r.candidates[i].t3.str();
    s.update(scores_json(r.breakdowns[i]));
    s["decision"] = std::string(to_string(r.decisions[i].outcome));
    j["scored"].push_back(std::move(s));
  }
  j["image_fallback"] = r.image_fallback;
  j["final_texts"] = r.final_texts;
  j["ground_truth"] = r.ground_truth;
  j["adapter_calls"] = {{"segment", r.calls.segment},
                        {"recognize", r.calls.recognize},
                        {"caption", r.calls.caption},
                        {"embed", r.calls.embed},
                        {"fallback", r.calls.fallback}};
  j["warnings"] = r.warnings;
  j["error"] = r.error ? ordered_json(*r.error) : ordered_json(nullptr);
  return j.dump();
}

std::string metrics_json(const MetricsReport& m, const std::optional<GateConfig>& gate) {
  ordered_json j;
  if (!m.label.empty()) j["label"] = m.label;
  if (gate) {
    j["alpha"] = gate->alpha;
    j["beta"] = gate->beta;
    j["tau"] = gate->tau;
  }
  j["images"] = m.images;
  j["failed_images"] = m.failed_images;
  j["ground_truth_instances"] = m.ground_truth_instances;
  j["matched"] = m.matched;
  j["accuracy"] = m.accuracy;
  j["gated_units"] = m.gated_units;
  j["cbr"] = m.cbr;
  j["fallbacks"] = m.fallbacks;
  j["false_positives"] = m.false_positives;
  j["image_fallbacks"] = m.image_fallbacks;
  j["fallback_calls"] = m.fallback_calls;
  return j.dump();
}

void write_jsonl(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& l : lines) out << l << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void write_trace(const std::filesystem::path& path, const std::vector<EvalRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) lines.push_back(trace_json(r));
  write_jsonl(path, lines);
}

namespace {

void header(std::ostream& os, const char* first) {
  os << std::left << std::setw(22) << first << std::right << std::setw(10) << "accuracy"
     << std::setw(8) << "CBR" << std::setw(11) << "fallbacks" << std::setw(8) << "FPR"
     << std::setw(8) << "failed" << '\n';
}

void row(std::ostream& os, const std::string& name, const MetricsReport& m) {
  os << std::left << std::setw(22) << name << std::right << std::fixed << std::setprecision(1)
     << std::setw(9) << 100.0 * m.accuracy << '%' << std::setw(8) << m.cbr << std::setw(11)
     << m.fallbacks << std::setw(8) << m.false_positives << std::setw(8) << m.failed_images
     << '\n';
  os.unsetf(std::ios::floatfield);
}

}  // namespace

void print_table(std::ostream& os, const std::vector<MetricsRow>& rows) {
  header(os, "(alpha, beta, tau)");
  for (const auto& r : rows) {
    std::ostringstream name;
    name << '(' << r.gate.alpha << ", " << r.gate.beta << ", " << r.gate.tau << ')';
    row(os, name.str(), r.metrics);
  }
}

void print_table(std::ostream& os, const std::vector<MetricsReport>& rows) {
  header(os, "label");
  for (const auto& r : rows) row(os, r.label.empty() ? "-" : r.label, r);
}

}  // namespace ctxstr::report
