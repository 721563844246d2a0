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

#include "ctxstr/adapters.hpp"

#include <cmath>

#include "ctxstr/error.hpp"

namespace ctxstr {

LengthBounds length_bounds(DescriptionLength length) noexcept {
  switch (length) {
    case DescriptionLength::short_len: return {40, 20};
    case DescriptionLength::medium: return {80, 40};
    case DescriptionLength::long_len: return {120, 80};
  }
  return {80, 40};
}

std::string_view to_string(DescriptionLength length) {
  switch (length) {
    case DescriptionLength::short_len: return "short";
    case DescriptionLength::medium: return "medium";
    case DescriptionLength::long_len: return "long";
  }
  return "medium";
}

DescriptionLength parse_description_length(std::string_view s) {
  if (s == "short") return DescriptionLength::short_len;
  if (s == "medium") return DescriptionLength::medium;
  if (s == "long") return DescriptionLength::long_len;
  throw ValidationError("description length must be short|medium|long, got '" + std::string(s) +
                        "'");
}

BinaryMask MaskFileSegmenter::segment(const ManifestEntry& entry) {
  return read_mask(entry.mask_path, threshold_);
}

// --- toy embedder ---

std::size_t ToyEmbedder::bucket(char32_t a, char32_t b) noexcept {
  constexpr std::uint64_t kOffsetBasis = 0xCBF29CE484222325ULL;
  constexpr std::uint64_t kPrime = 0x100000001B3ULL;
  std::uint64_t h = kOffsetBasis ^ kSeed;
  for (const std::uint32_t cp : {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (cp >> shift) & 0xFFu;
      h *= kPrime;
    }
  }
  return static_cast<std::size_t>(h % kDim);
}

Embedding ToyEmbedder::embed_text(const NormalizedText& text) {
  const auto cps = text.code_points();
  std::vector<double> v(kDim, 0.0);
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) v[bucket(cps[i], cps[i + 1])] += 1.0;
  double norm2 = 0.0;
  for (const double x : v) norm2 += x * x;
  if (norm2 > 0.0) {
    const double norm = std::sqrt(norm2);
    for (double& x : v) x /= norm;
  }
  return Embedding(std::move(v));
}

// --- replay ---

ReplayBackend::ReplayBackend(const std::vector<ManifestEntry>& manifest) {
  for (const auto& e : manifest) {
    if (!e.recorded) continue;
    ReplayBundle b = *e.recorded;
    if (e.embeddings_path) {
      for (auto& [key, vec] : load_embeddings(*e.embeddings_path)) {
        b.embeddings.insert_or_assign(key, std::move(vec));
      }
    }
    add(e.image_id, std::move(b));
  }
}

void ReplayBackend::add(std::string image_id, ReplayBundle bundle) {
  bundles_.insert_or_assign(std::move(image_id), std::move(bundle));
}

const ReplayBundle& ReplayBackend::bundle(const std::string& image_id) const {
  const auto it = bundles_.find(image_id);
  if (it == bundles_.end()) {
    throw FixtureError("replay fixture has no recording for image '" + image_id + "'");
  }
  return it->second;
}

std::string ReplayBackend::recognize(const SourceImageRef& image,
                                     const std::optional<TextBlock>& region) {
  const auto& b = bundle(image.image_id);
  if (!region) return b.t1;
  const auto rank = static_cast<std::size_t>(region->rank);
  if (region->rank < 0 || rank >= b.t3_by_rank.size()) {
    throw FixtureError("replay fixture for image '" + image.image_id + "' has no T3 for rank " +
                       std::to_string(region->rank) + " (recorded " +
                       std::to_string(b.t3_by_rank.size()) + ")");
  }
  return b.t3_by_rank[rank];
}

Caption ReplayBackend::caption(const SourceImageRef& image, DescriptionLength) {
  return {bundle(image.image_id).t2, std::nullopt};
}

Embedding ReplayBackend::embed(const NormalizedText& text, const EmbedKey& key) {
  const auto& b = bundle(key.image_id);
  if (b.embeddings.empty()) return ToyEmbedder::embed_text(text);

  const std::string* recorded = nullptr;
  if (key.role == "T1") {
    recorded = &b.t1;
  } else if (key.role == "T2") {
    recorded = &b.t2;
  } else if (key.role.starts_with("T3@")) {
    const auto rank = std::stoul(key.role.substr(3));
    if (rank < b.t3_by_rank.size()) recorded = &b.t3_by_rank[rank];
  }
  if (recorded && normalize(*recorded) == text) {
    if (const auto it = b.embeddings.find(key.role); it != b.embeddings.end()) return it->second;
  }
  if (const auto it = b.embeddings.find("text:" + text.str()); it != b.embeddings.end()) {
    return it->second;
  }
  if (text.empty()) {
    // Nothing to encode: the zero vector of the recorded dimension.
    return Embedding(std::vector<double>(b.embeddings.begin()->second.dim(), 0.0));
  }
  throw FixtureError("replay fixture for image '" + key.image_id + "' has no embedding for " +
                     key.role + " text '" + text.str() + "'");
}

std::string ReplayBackend::name_for(std::string_view image_id) const {
  const auto it = bundles_.find(image_id);
  if (it == bundles_.end() || it->second.embeddings.empty()) return "toy";
  return "replay";
}

std::vector<std::string> ReplayBackend::fallback_recognize(const SourceImageRef& image) {
  const auto& b = bundle(image.image_id);
  if (!b.fallback_text) {
    throw FixtureError("replay fixture for image '" + image.image_id +
                       "' was routed to the fallback recognizer but records no fallback_text; "
                       "the fixture is incomplete");
  }
  return {*b.fallback_text};
}

AdapterSet make_replay_adapters(const std::vector<ManifestEntry>& manifest) {
  auto replay = std::make_shared<ReplayBackend>(manifest);
  return {std::make_shared<MaskFileSegmenter>(), replay, replay, replay, replay};
}

std::string base64_encode(std::string_view bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const std::uint32_t n = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                            static_cast<unsigned char>(bytes[i + 2]);
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += kAlphabet[(n >> 6) & 63];
    out += kAlphabet[n & 63];
  }
  if (const std::size_t rest = bytes.size() - i; rest > 0) {
    std::uint32_t n = static_cast<unsigned char>(bytes[i]) << 16;
    if (rest == 2) n |= static_cast<unsigned char>(bytes[i + 1]) << 8;
    out += kAlphabet[(n >> 18) & 63];
    out += kAlphabet[(n >> 12) & 63];
    out += rest == 2 ? kAlphabet[(n >> 6) & 63] : '=';
    out += '=';
  }
  return out;
}

}  // namespace ctxstr
