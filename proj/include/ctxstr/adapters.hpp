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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxstr/lexsem.hpp"
#include "ctxstr/localizer.hpp"
#include "ctxstr/manifest.hpp"
#include "ctxstr/mask.hpp"
#include "ctxstr/replay.hpp"

namespace ctxstr {

enum class DescriptionLength { short_len, medium, long_len };

struct LengthBounds {
  int max_length;
  int min_length;
};

// short (40,20), medium (80,40), long (120,80).
LengthBounds length_bounds(DescriptionLength length) noexcept;
std::string_view to_string(DescriptionLength length);
DescriptionLength parse_description_length(std::string_view s);

struct Caption {
  std::string text;
  std::optional<std::string> warning;  // e.g. token count outside the preset bounds
};

// Identifies what is being embedded: the image and the role of the text
// ("T1", "T2", "T3@<rank>"). Only replay backends look at it.
struct EmbedKey {
  std::string image_id;
  std::string role;
};

// The five model roles. Implementations must tolerate concurrent calls for
// different images.

class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual BinaryMask segment(const ManifestEntry& entry) = 0;
};

class Recognizer {
 public:
  virtual ~Recognizer() = default;
  // No region: full-image recognition. With a region: the crop of that block.
  virtual std::string recognize(const SourceImageRef& image,
                                const std::optional<TextBlock>& region) = 0;
};

class Captioner {
 public:
  virtual ~Captioner() = default;
  virtual Caption caption(const SourceImageRef& image, DescriptionLength length) = 0;
};

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual Embedding embed(const NormalizedText& text, const EmbedKey& key) = 0;
  // Name recorded in the trace for this image.
  virtual std::string name_for(std::string_view image_id) const = 0;
};

class FallbackRecognizer {
 public:
  virtual ~FallbackRecognizer() = default;
  virtual std::vector<std::string> fallback_recognize(const SourceImageRef& image) = 0;
};

struct AdapterSet {
  std::shared_ptr<Segmenter> segmenter;
  std::shared_ptr<Recognizer> recognizer;
  std::shared_ptr<Captioner> captioner;
  std::shared_ptr<Embedder> embedder;
  std::shared_ptr<FallbackRecognizer> fallback;
};

// Reads the mask named in the manifest entry.
class MaskFileSegmenter final : public Segmenter {
 public:
  explicit MaskFileSegmenter(int threshold = kDefaultThreshold) : threshold_(threshold) {}
  BinaryMask segment(const ManifestEntry& entry) override;

 private:
  int threshold_;
};

// Character-bigram hashing embedder.
//
// Every pair of adjacent code points (a, b) of the normalized text is hashed
// with 64-bit FNV-1a over the eight bytes a, b (each little-endian uint32),
// starting from the FNV offset basis xor kSeed; the bigram adds 1 to bucket
// hash % 64. The count vector is then l2-normalized. Texts shorter than two
// code points have no bigrams and embed to the zero vector.
class ToyEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDim = 64;
  static constexpr std::uint64_t kSeed = 0x5EEDC0FFEE15BADULL;

  static Embedding embed_text(const NormalizedText& text);
  static std::size_t bucket(char32_t a, char32_t b) noexcept;

  Embedding embed(const NormalizedText& text, const EmbedKey&) override { return embed_text(text); }
  std::string name_for(std::string_view) const override { return "toy"; }
};

// Serves recorded outputs keyed by image id. Images whose bundle carries no
// embeddings (inline or sidecar) are embedded with the toy embedder and
// reported as such.
class ReplayBackend final : public Recognizer,
                            public Captioner,
                            public Embedder,
                            public FallbackRecognizer {
 public:
  // Loads sidecar embeddings for entries that name one. Entries without a
  // recorded bundle are skipped; asking for them later is a fixture error.
  explicit ReplayBackend(const std::vector<ManifestEntry>& manifest);
  ReplayBackend() = default;

  void add(std::string image_id, ReplayBundle bundle);

  std::string recognize(const SourceImageRef& image,
                        const std::optional<TextBlock>& region) override;
  Caption caption(const SourceImageRef& image, DescriptionLength length) override;
  Embedding embed(const NormalizedText& text, const EmbedKey& key) override;
  std::string name_for(std::string_view image_id) const override;
  std::vector<std::string> fallback_recognize(const SourceImageRef& image) override;

  const ReplayBundle& bundle(const std::string& image_id) const;

 private:
  std::map<std::string, ReplayBundle, std::less<>> bundles_;
};

struct RemoteEndpoint {
  std::string base_url = "http://127.0.0.1:8000";
  int timeout_ms = 30000;
  DescriptionLength description_length = DescriptionLength::medium;
};

struct RemoteInfo {
  std::size_t dim = 0;
  std::string model_name;
};

// HTTP client for the model service. Bodies are JSON:
//   POST /recognize {image_id, image_b64?, bbox?} -> {text}
//   POST /caption   {image_id, image_b64?, max_length, min_length} -> {text}
//   POST /embed     {text} -> {vector}
//   POST /fallback  {image_id, image_b64?} -> {texts}
//   GET  /info      -> {dim, model_name}
// Network failures, timeouts, non-200 replies and malformed bodies throw
// TransportError. image_b64 carries the raw bytes of SourceImageRef::path
// when that file exists.
class RemoteBackend final : public Recognizer,
                            public Captioner,
                            public Embedder,
                            public FallbackRecognizer {
 public:
  explicit RemoteBackend(RemoteEndpoint endpoint);

  RemoteInfo info();
  std::string recognize(const SourceImageRef& image,
                        const std::optional<TextBlock>& region) override;
  // The requested length is sent as its (max_length, min_length) preset; a
  // reply whose whitespace token count falls outside it carries a warning.
  Caption caption(const SourceImageRef& image, DescriptionLength length) override;
  Embedding embed(const NormalizedText& text, const EmbedKey& key) override;
  std::string name_for(std::string_view) const override { return "remote"; }
  std::vector<std::string> fallback_recognize(const SourceImageRef& image) override;

  const RemoteEndpoint& endpoint() const noexcept { return endpoint_; }

 private:
  std::string post(const std::string& route, const std::string& body);
  RemoteEndpoint endpoint_;
};

AdapterSet make_replay_adapters(const std::vector<ManifestEntry>& manifest);
AdapterSet make_remote_adapters(const RemoteEndpoint& endpoint);

std::string base64_encode(std::string_view bytes);

}  // namespace ctxstr
