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

// Command-line front end: localize, score, run, ablate, scenarios,
// maskmetrics. Exit status 0 on success, 1 on invalid input, 2 on runtime or
// adapter failure.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "ctxstr/adapters.hpp"
#include "ctxstr/error.hpp"
#include "ctxstr/gate.hpp"
#include "ctxstr/harness.hpp"
#include "ctxstr/localizer.hpp"
#include "ctxstr/mask_metrics.hpp"
#include "ctxstr/report.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace ctxstr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

// Records every option bound on a subcommand so the resolved configuration
// can be written out and overlaid from a file.
class Bindings {
 public:
  explicit Bindings(CLI::App* app) : app_(app) {}

  template <typename T>
  CLI::Option* add(const std::string& name, T& value, const std::string& help) {
    getters_[name] = [&value] { return ordered_json(value); };
    return app_->add_option("--" + name, value, help)->capture_default_str();
  }

  CLI::Option* add(const std::string& name, fs::path& value, const std::string& help) {
    getters_[name] = [&value] { return ordered_json(value.string()); };
    return app_->add_option("--" + name, value, help);
  }

  CLI::App* app() const { return app_; }

  // Options given on the command line win; the file fills the rest.
  void overlay(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config file " + file.string());
    ordered_json cfg;
    try {
      cfg = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
      throw ValidationError(file.string() + ": " + e.what());
    }
    if (!cfg.is_object()) throw ValidationError(file.string() + ": config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
      if (key == "subcommand") {
        if (value != app_->get_name()) {
          throw ValidationError(file.string() + ": config is for subcommand '" +
                                value.dump() + "', not '" + app_->get_name() + "'");
        }
        continue;
      }
      if (key == "config") continue;
      auto* opt = app_->get_option_no_throw("--" + key);
      if (opt == nullptr || !getters_.contains(key)) {
        throw ValidationError(file.string() + ": unknown option '" + key + "'");
      }
      if (opt->count() > 0) continue;
      opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
      try {
        opt->run_callback();
      } catch (const CLI::Error& e) {
        throw ValidationError(file.string() + ": option '" + key + "': " + e.what());
      }
    }
  }

  ordered_json resolved() const {
    ordered_json j;
    j["subcommand"] = app_->get_name();
    for (const auto& [name, get] : getters_) j[name] = get();
    return j;
  }

 private:
  CLI::App* app_;
  std::map<std::string, std::function<ordered_json()>> getters_;
};

struct LocFlags {
  int padding = 5;
  std::int64_t min_area = 100;
  int max_blocks = 10;
  int connectivity = 8;

  void bind(Bindings& b) {
    b.add("padding", padding, "Padding added around each block (pixels)");
    b.add("min-area", min_area, "Minimum block area before padding (pixels^2)");
    b.add("max-blocks", max_blocks, "Maximum number of blocks per image");
    b.add("connectivity", connectivity, "Pixel adjacency, 4 or 8")
        ->check(CLI::IsMember({4, 8}));
  }

  LocalizerConfig config() const {
    LocalizerConfig c;
    c.padding = padding;
    c.min_area = min_area;
    c.max_blocks = max_blocks;
    c.connectivity = connectivity == 4 ? Connectivity::four : Connectivity::eight;
    c.validate();
    return c;
  }
};

struct GateFlags {
  double alpha = 0.6;
  double beta = 0.4;
  double tau = 0.8;
  std::string lexical = "whole";

  void bind(Bindings& b) {
    b.add("alpha", alpha, "Weight of semantic similarity");
    b.add("beta", beta, "Weight of lexical similarity");
    b.add("tau", tau, "Confidence threshold");
    b.add("lexical", lexical, "Lexical score mode: whole|token_best");
  }

  GateConfig config() const {
    GateConfig g;
    g.alpha = alpha;
    g.beta = beta;
    g.tau = tau;
    g.lexical = parse_lexical_mode(lexical);
    g.validate();
    return g;
  }
};

struct BackendFlags {
  std::string backend = "replay";
  std::string endpoint = "http://127.0.0.1:8000";
  int timeout_ms = 30000;
  std::string desc_length = "medium";
  std::string image_level_fallback = "any";
  int workers = 1;

  void bind(Bindings& b) {
    b.add("backend", backend, "Model backend: replay|remote")
        ->check(CLI::IsMember({"replay", "remote"}));
    b.add("endpoint", endpoint, "Base URL of the model service (remote backend)");
    b.add("timeout-ms", timeout_ms, "Per-request timeout for the remote backend");
    b.add("desc-length", desc_length, "Scene description length: short|medium|long");
    b.add("image-level-fallback", image_level_fallback,
          "Route an image to the fallback recognizer when any|all|majority of its blocks fall "
          "back");
    b.add("workers", workers, "Images processed concurrently");
  }

  AdapterSet adapters(const std::vector<ManifestEntry>& manifest) const {
    if (backend == "remote") return make_remote_adapters(endpoint_config());
    return make_replay_adapters(manifest);
  }

  RemoteEndpoint endpoint_config() const {
    RemoteEndpoint e;
    e.base_url = endpoint;
    e.timeout_ms = timeout_ms;
    e.description_length = parse_description_length(desc_length);
    return e;
  }
};

PipelineConfig pipeline_config(const LocFlags& loc, const GateFlags& gate,
                               const BackendFlags& backend) {
  PipelineConfig cfg;
  cfg.loc = loc.config();
  cfg.gate = gate.config();
  cfg.image_policy = parse_image_policy(backend.image_level_fallback);
  cfg.description_length = parse_description_length(backend.desc_length);
  cfg.workers = backend.workers;
  if (backend.timeout_ms <= 0) throw ValidationError("timeout-ms must be positive");
  cfg.validate();
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text << '\n';
}

void prepare_out_dir(const fs::path& dir, const Bindings& b) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_text(dir / "config.resolved.json", b.resolved().dump(2));
}

int report_failures(const std::vector<EvalRecord>& records) {
  int failed = 0;
  for (const auto& r : records) {
    if (r.error) {
      std::cerr << "image " << r.image_id << " failed: " << *r.error << '\n';
      ++failed;
    }
  }
  return failed > 0 ? kExitRuntime : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence-gated scene text recognition engine"};
  app.require_subcommand(1);

  // localize
  auto* loc_cmd = app.add_subcommand("localize", "Extract text blocks from a mask");
  Bindings loc_b(loc_cmd);
  fs::path loc_mask, loc_out, loc_config;
  int loc_threshold = kDefaultThreshold;
  LocFlags loc_flags;
  loc_b.add("mask", loc_mask, "Mask file (PGM)")->required();
  loc_b.add("threshold", loc_threshold, "Binarization threshold")->check(CLI::Range(0, 255));
  loc_flags.bind(loc_b);
  loc_b.add("out", loc_out, "Output JSON file (stdout when omitted)");
  loc_cmd->add_option("--config", loc_config, "JSON config overlay");

  // score
  auto* score_cmd = app.add_subcommand("score", "Score one candidate triple");
  Bindings score_b(score_cmd);
  std::string t1, t2, t3, embedder = "toy", endpoint = "http://127.0.0.1:8000";
  fs::path embeddings_file, score_config;
  int score_timeout = 30000;
  GateFlags score_gate;
  score_b.add("t1", t1, "Full-image recognition")->required();
  score_b.add("t2", t2, "Scene description")->required();
  score_b.add("t3", t3, "Crop recognition")->required();
  score_gate.bind(score_b);
  score_b.add("embedder", embedder, "toy|replay|remote")
      ->check(CLI::IsMember({"toy", "replay", "remote"}));
  score_b.add("embeddings", embeddings_file, "JSON with T1/T2/T3 vectors (replay embedder)");
  score_b.add("endpoint", endpoint, "Model service URL (remote embedder)");
  score_b.add("timeout-ms", score_timeout, "Remote request timeout");
  score_cmd->add_option("--config", score_config, "JSON config overlay");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run the pipeline over a manifest");
  Bindings run_b(run_cmd);
  fs::path run_manifest, run_out, run_config;
  LocFlags run_loc;
  GateFlags run_gate;
  BackendFlags run_backend;
  run_b.add("manifest", run_manifest, "Manifest (JSON lines)")->required();
  run_loc.bind(run_b);
  run_gate.bind(run_b);
  run_backend.bind(run_b);
  run_b.add("out-dir", run_out, "Directory for trace.jsonl / metrics.jsonl")->required();
  run_cmd->add_option("--config", run_config, "JSON config overlay");

  // ablate
  auto* abl_cmd = app.add_subcommand("ablate", "Sweep (alpha, beta, tau) over cached candidates");
  Bindings abl_b(abl_cmd);
  fs::path abl_manifest, abl_grid, abl_out, abl_config;
  LocFlags abl_loc;
  BackendFlags abl_backend;
  std::string abl_lexical = "whole";
  abl_b.add("manifest", abl_manifest, "Manifest (JSON lines)")->required();
  abl_b.add("grid", abl_grid, "Grid file, one (alpha, beta, tau) per line")->required();
  abl_loc.bind(abl_b);
  abl_backend.bind(abl_b);
  abl_b.add("lexical", abl_lexical, "Lexical score mode: whole|token_best");
  abl_b.add("out-dir", abl_out, "Directory for metrics.jsonl")->required();
  abl_cmd->add_option("--config", abl_config, "JSON config overlay");

  // scenarios
  auto* scn_cmd = app.add_subcommand("scenarios", "Context sensitivity study");
  Bindings scn_b(scn_cmd);
  fs::path scn_manifest, scn_out, scn_config;
  std::string scenario = "correct";
  std::string decoy = kDefaultDecoy;
  LocFlags scn_loc;
  GateFlags scn_gate;
  BackendFlags scn_backend;
  scn_b.add("manifest", scn_manifest, "Manifest (JSON lines)")->required();
  scn_b.add("scenario", scenario, "none|wrong|correct|all")
      ->check(CLI::IsMember({"none", "wrong", "correct", "all"}));
  scn_b.add("decoy", decoy, "Description substituted in the 'wrong' scenario");
  scn_loc.bind(scn_b);
  scn_gate.bind(scn_b);
  scn_backend.bind(scn_b);
  scn_b.add("out-dir", scn_out, "Optional directory for metrics.jsonl / trace files");
  scn_cmd->add_option("--config", scn_config, "JSON config overlay");

  // maskmetrics
  auto* mm_cmd = app.add_subcommand("maskmetrics", "Foreground IoU and F1 of two masks");
  Bindings mm_b(mm_cmd);
  fs::path mm_pred, mm_gt, mm_config;
  int mm_threshold = kDefaultThreshold;
  mm_b.add("pred", mm_pred, "Predicted mask (PGM)")->required();
  mm_b.add("gt", mm_gt, "Ground-truth mask (PGM)")->required();
  mm_b.add("threshold", mm_threshold, "Binarization threshold")->check(CLI::Range(0, 255));
  mm_cmd->add_option("--config", mm_config, "JSON config overlay");

  const std::vector<std::pair<Bindings*, fs::path*>> overlays = {
      {&loc_b, &loc_config}, {&score_b, &score_config}, {&run_b, &run_config},
      {&abl_b, &abl_config}, {&scn_b, &scn_config},     {&mm_b, &mm_config}};

  try {
    // Required options may come from the config file, so requirement checks
    // are deferred until after the overlay.
    std::vector<std::pair<CLI::App*, CLI::Option*>> required;
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
      for (auto* opt : sub->get_options()) {
        if (opt->get_required()) {
          opt->required(false);
          required.emplace_back(sub, opt);
        }
      }
    }
    app.parse(argc, argv);
    for (const auto& [bindings, path] : overlays) {
      if (bindings->app()->parsed() && !path->empty()) bindings->overlay(*path);
    }
    for (const auto& [sub, opt] : required) {
      if (opt->count() == 0 && sub->parsed()) {
        throw CLI::RequiredError(opt->get_name());
      }
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    if (loc_cmd->parsed()) {
      const auto cfg = loc_flags.config();
      const auto mask = read_mask(loc_mask, loc_threshold);
      const auto json = report::localization_json(loc_mask.stem().string(), localize(mask, cfg));
      if (loc_out.empty()) {
        std::cout << json << '\n';
      } else {
        write_text(loc_out, json);
      }
      return kExitOk;
    }

    if (score_cmd->parsed()) {
      const auto gate = score_gate.config();
      const CandidateTexts texts{normalize(t1), normalize(t2), normalize(t3)};
      std::vector<Embedding> e;
      if (embedder == "toy") {
        for (const auto* t : {&texts.t1, &texts.t2, &texts.t3}) {
          e.push_back(ToyEmbedder::embed_text(*t));
        }
      } else if (embedder == "replay") {
        if (embeddings_file.empty()) {
          throw ValidationError("--embedder replay needs --embeddings");
        }
        const auto stored = load_embeddings(embeddings_file);
        for (const char* key : {"T1", "T2", "T3"}) {
          const auto it = stored.find(key);
          if (it == stored.end()) {
            throw ValidationError(embeddings_file.string() + " has no '" + key + "' vector");
          }
          e.push_back(it->second);
        }
      } else {
        RemoteEndpoint ep;
        ep.base_url = endpoint;
        ep.timeout_ms = score_timeout;
        RemoteBackend remote(ep);
        for (const auto* t : {&texts.t1, &texts.t2, &texts.t3}) {
          e.push_back(remote.embed(*t, {"", ""}));
        }
      }
      const auto decision = route(score(texts, e[0], e[1], e[2], gate), gate);
      std::cout << report::breakdown_json(decision, gate) << '\n';
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      const auto cfg = pipeline_config(run_loc, run_gate, run_backend);
      const auto manifest = load_manifest(run_manifest);
      const auto adapters = run_backend.adapters(manifest);
      prepare_out_dir(run_out, run_b);
      const auto records = run_pipeline(manifest, cfg, adapters);
      auto metrics = compute_metrics(records);
      metrics.label = "run";
      report::write_trace(run_out / "trace.jsonl", records);
      report::write_jsonl(run_out / "metrics.jsonl", {report::metrics_json(metrics, cfg.gate)});
      report::print_table(std::cout, std::vector<MetricsReport>{metrics});
      return report_failures(records);
    }

    if (abl_cmd->parsed()) {
      LocFlags& loc = abl_loc;
      GateFlags gate_flags;
      gate_flags.lexical = abl_lexical;
      auto cfg = pipeline_config(loc, gate_flags, abl_backend);
      auto grid = load_grid(abl_grid);
      for (auto& g : grid) g.lexical = cfg.gate.lexical;
      const auto manifest = load_manifest(abl_manifest);
      const auto adapters = abl_backend.adapters(manifest);
      prepare_out_dir(abl_out, abl_b);
      const auto rows = ablate(manifest, cfg, adapters, grid);
      std::vector<std::string> lines;
      for (const auto& r : rows) lines.push_back(report::metrics_json(r.metrics, r.gate));
      report::write_jsonl(abl_out / "metrics.jsonl", lines);
      report::print_table(std::cout, rows);
      for (const auto& r : rows) {
        if (r.metrics.failed_images > 0) return kExitRuntime;
      }
      return kExitOk;
    }

    if (scn_cmd->parsed()) {
      const auto cfg = pipeline_config(scn_loc, scn_gate, scn_backend);
      const auto manifest = load_manifest(scn_manifest);
      const auto adapters = scn_backend.adapters(manifest);
      if (!scn_out.empty()) prepare_out_dir(scn_out, scn_b);
      std::vector<Scenario> which;
      if (scenario == "all") {
        which = {Scenario::none, Scenario::wrong, Scenario::correct};
      } else {
        which = {parse_scenario(scenario)};
      }
      std::vector<MetricsReport> rows;
      std::vector<std::string> lines;
      int status = kExitOk;
      for (const auto s : which) {
        auto result = context_scenarios(manifest, cfg, adapters, s, decoy);
        if (!scn_out.empty()) {
          report::write_trace(scn_out / ("trace." + std::string(to_string(s)) + ".jsonl"),
                              result.records);
        }
        lines.push_back(report::metrics_json(result.metrics, cfg.gate));
        rows.push_back(result.metrics);
        if (report_failures(result.records) != kExitOk) status = kExitRuntime;
      }
      if (!scn_out.empty()) report::write_jsonl(scn_out / "metrics.jsonl", lines);
      report::print_table(std::cout, rows);
      return status;
    }

    if (mm_cmd->parsed()) {
      const auto pred = read_mask(mm_pred, mm_threshold);
      const auto gt = read_mask(mm_gt, mm_threshold);
      const auto c = overlap_counts(pred, gt);
      ordered_json j{{"pred", c.pred},
                     {"gt", c.gt},
                     {"intersection", c.intersection},
                     {"fg_iou", fg_iou(c)},
                     {"f1", f1_foreground(c)}};
      std::cout << j.dump() << '\n';
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitInvalid;
}
