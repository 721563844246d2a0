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
#include <string>
#include <vector>

#include "ctxstr/mask.hpp"

namespace ctxstr {

enum class Connectivity { four = 4, eight = 8 };

// Inclusive pixel rectangle.
struct BBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  // (x_max - x_min) * (y_max - y_min); a point or a one-pixel-wide box has area 0.
  std::int64_t area() const noexcept {
    return static_cast<std::int64_t>(x_max - x_min) * (y_max - y_min);
  }
  bool contains(int x, int y) const noexcept {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  bool contains(const BBox& o) const noexcept {
    return o.x_min >= x_min && o.x_max <= x_max && o.y_min >= y_min && o.y_max <= y_max;
  }
  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Component {
  int label = 0;  // 1-based, first-encounter raster order
  std::int64_t pixel_count = 0;
  BBox bbox_raw;
  friend bool operator==(const Component&, const Component&) = default;
};

// Per-pixel component labels (0 = background) plus the component table.
struct LabeledMask {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;
  std::vector<Component> components;
};

struct TextBlock {
  BBox bbox;
  std::int64_t area = 0;
  int source_component = 0;
  int rank = 0;
  friend bool operator==(const TextBlock&, const TextBlock&) = default;
};

struct LocalizerConfig {
  int padding = 5;
  std::int64_t min_area = 100;
  int max_blocks = 10;
  Connectivity connectivity = Connectivity::eight;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

// Connected-component labeling. The default entry point runs row strips in
// parallel and stitches them; the serial variant is the classic two-pass
// union-find scan. Both produce identical output.
LabeledMask label_components(const BinaryMask& mask, Connectivity conn = Connectivity::eight);
std::vector<Component> find_components(const BinaryMask& mask,
                                       Connectivity conn = Connectivity::eight);

namespace serial {
LabeledMask label_components(const BinaryMask& mask, Connectivity conn = Connectivity::eight);
std::vector<Component> find_components(const BinaryMask& mask,
                                       Connectivity conn = Connectivity::eight);
}  // namespace serial

struct Pixel {
  int x = 0;
  int y = 0;
};

// Tight min/max box. Throws ContractError on an empty set.
BBox component_bbox(const std::vector<Pixel>& pixels);

BBox pad_bbox(const BBox& box, int padding, int width, int height);

// Keeps blocks with area >= min_area, order preserved.
std::vector<TextBlock> filter_by_area(std::vector<TextBlock> blocks, std::int64_t min_area);

// Area descending, then (y_min, x_min), then label; keeps max_blocks and
// renumbers ranks from 0.
std::vector<TextBlock> sort_and_limit(std::vector<TextBlock> blocks, int max_blocks);

// Full block localization: components, area filter on the raw box, padding,
// sort and cap. An empty result means no text was found.
std::vector<TextBlock> localize(const BinaryMask& mask, const LocalizerConfig& cfg = {});

}  // namespace ctxstr
