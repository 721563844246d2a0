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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ctxstr {

// H x W grid of {0,1} labels, row-major. Immutable once built.
class BinaryMask {
 public:
  BinaryMask(int width, int height, std::vector<std::uint8_t> data);

  // All-background mask.
  static BinaryMask zeros(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t at(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::size_t foreground_count() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

// Reference to the natural image a mask was predicted from. Pixels are never
// decoded here; adapters receive the path and forward the raw bytes.
struct SourceImageRef {
  std::string image_id;
  std::optional<std::filesystem::path> path;
  int width = 0;
  int height = 0;
};

inline constexpr int kDefaultThreshold = 128;

// Reads an 8-bit PGM (P2 or P5, maxval 255). Pixels >= threshold become 1.
BinaryMask read_mask(const std::filesystem::path& path, int threshold = kDefaultThreshold);

// Same as read_mask but over an in-memory buffer.
BinaryMask parse_pgm(std::span<const std::uint8_t> bytes, int threshold = kDefaultThreshold);

// Writes P5, maxval 255, foreground 255.
void write_mask(const BinaryMask& mask, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_pgm(const BinaryMask& mask);

}  // namespace ctxstr
