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

// Deterministic 500-image replay fixture for gate, ablation and scenario
// tests. One 30x30 text square per 64x64 mask, so each image has exactly one
// gated block. Texts are drawn from a fixed word list; the mix of description
// styles spreads confidence under the toy embedder from near 0 to 1.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "ctxstr/mask.hpp"
#include "json.hpp"

namespace ctxstr::fixture {

inline const std::vector<std::string>& words() {
  static const std::vector<std::string> w = {
      "exit",    "stop",    "open",     "hotel",   "coffee",  "parking", "pizza",
      "bakery",  "pharmacy", "taxi",    "sale",    "bank",    "school",  "police",
      "market",  "cinema",  "library",  "garden",  "museum",  "station", "closed",
      "bar",     "florist", "barber",   "books",   "diner",   "motel",   "toilets",
      "airport", "tickets", "entrance", "welcome", "bridge",  "harbour", "theatre",
      "grocery", "laundry", "bicycle",  "kebab",   "subway"};
  return w;
}

// Platform-independent uniform draws from the standard-specified mt19937.
class Draw {
 public:
  explicit Draw(std::uint32_t seed) : rng_(seed) {}
  double unit() { return static_cast<double>(rng_()) / 4294967296.0; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * n); }

 private:
  std::mt19937 rng_;
};

// Replaces one letter by its alphabet successor.
inline std::string misspell(const std::string& w, Draw& d) {
  std::string out = w;
  const auto i = d.index(out.size());
  out[i] = out[i] == 'z' ? 'a' : static_cast<char>(out[i] + 1);
  return out;
}

struct Record {
  std::string image_id;
  std::string t1;
  std::string t2;
  std::string t3;
  std::string fallback;
  std::string truth;
};

inline std::vector<Record> records(std::size_t n = 500, std::uint32_t seed = 20260101) {
  Draw d(seed);
  const auto& vocab = words();
  std::vector<Record> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Record r;
    r.image_id = "img_" + std::to_string(1000 + i);
    const std::string w = vocab[d.index(vocab.size())];
    r.truth = w;
    r.t3 = d.unit() < 0.8 ? w : misspell(w, d);
    const double t1_draw = d.unit();
    r.t1 = t1_draw < 0.5 ? w : (t1_draw < 0.8 ? misspell(w, d) : vocab[d.index(vocab.size())]);

    const double style = d.unit();
    if (style < 0.30) {
      r.t2 = w;
    } else if (style < 0.55) {
      r.t2 = w + " " + w;
    } else if (style < 0.72) {
      r.t2 = "the " + w + " sign";
    } else if (style < 0.95) {
      r.t2 = "a storefront with a neon sign above the " + w + " entrance on a busy street";
    } else {
      // Misleading context: description and crop agree on the same misspelling.
      const std::string wrong = misspell(w, d);
      r.t2 = wrong;
      r.t3 = wrong;
    }
    r.fallback = d.unit() < 0.9 ? w : misspell(w, d);
    out.push_back(std::move(r));
  }
  return out;
}

inline BinaryMask square_mask() {
  std::vector<std::uint8_t> px(64 * 64, 0);
  for (int y = 17; y < 47; ++y) {
    for (int x = 17; x < 47; ++x) px[y * 64 + x] = 1;
  }
  return BinaryMask(64, 64, std::move(px));
}

// Writes mask.pgm and manifest.jsonl into `dir`; returns the manifest path.
inline std::filesystem::path write(const std::filesystem::path& dir, std::size_t n = 500,
                                   std::uint32_t seed = 20260101) {
  std::filesystem::create_directories(dir);
  write_mask(square_mask(), dir / "mask.pgm");
  const auto path = dir / "manifest.jsonl";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  for (const auto& r : records(n, seed)) {
    nlohmann::ordered_json j;
    j["image_id"] = r.image_id;
    j["mask_path"] = "mask.pgm";
    j["ground_truth"] = {r.truth};
    j["recorded"] = {{"t1", r.t1},
                     {"t2", r.t2},
                     {"t3_by_rank", {r.t3}},
                     {"fallback_text", r.fallback}};
    out << j.dump() << '\n';
  }
  return path;
}

}  // namespace ctxstr::fixture
