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

#include <algorithm>

#include "ctxstr/error.hpp"
#include "ctxstr/localizer.hpp"

namespace ctxstr {

void LocalizerConfig::validate() const {
  if (padding < 0) throw ValidationError("padding must be >= 0, got " + std::to_string(padding));
  if (min_area < 0) {
    throw ValidationError("min_area must be >= 0, got " + std::to_string(min_area));
  }
  if (max_blocks < 1) {
    throw ValidationError("max_blocks must be >= 1, got " + std::to_string(max_blocks));
  }
  if (connectivity != Connectivity::four && connectivity != Connectivity::eight) {
    throw ValidationError("connectivity must be 4 or 8");
  }
}

BBox component_bbox(const std::vector<Pixel>& pixels) {
  if (pixels.empty()) throw ContractError("bounding box of an empty pixel set");
  BBox b{pixels.front().x, pixels.front().y, pixels.front().x, pixels.front().y};
  for (const auto& p : pixels) {
    b.x_min = std::min(b.x_min, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.x_max = std::max(b.x_max, p.x);
    b.y_max = std::max(b.y_max, p.y);
  }
  return b;
}

BBox pad_bbox(const BBox& box, int padding, int width, int height) {
  // Inclusive coordinates, so the far edge clamps to W-1 / H-1.
  return {std::max(0, box.x_min - padding), std::max(0, box.y_min - padding),
          std::min(width - 1, box.x_max + padding), std::min(height - 1, box.y_max + padding)};
}

std::vector<TextBlock> filter_by_area(std::vector<TextBlock> blocks, std::int64_t min_area) {
  std::erase_if(blocks, [min_area](const TextBlock& b) { return b.area < min_area; });
  return blocks;
}

std::vector<TextBlock> sort_and_limit(std::vector<TextBlock> blocks, int max_blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const TextBlock& a, const TextBlock& b) {
    if (a.area != b.area) return a.area > b.area;
    if (a.bbox.y_min != b.bbox.y_min) return a.bbox.y_min < b.bbox.y_min;
    if (a.bbox.x_min != b.bbox.x_min) return a.bbox.x_min < b.bbox.x_min;
    return a.source_component < b.source_component;
  });
  if (max_blocks >= 0 && blocks.size() > static_cast<std::size_t>(max_blocks)) {
    blocks.resize(static_cast<std::size_t>(max_blocks));
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i].rank = static_cast<int>(i);
  return blocks;
}

std::vector<TextBlock> localize(const BinaryMask& mask, const LocalizerConfig& cfg) {
  cfg.validate();
  const auto components = find_components(mask, cfg.connectivity);

  std::vector<TextBlock> blocks;
  blocks.reserve(components.size());
  for (const auto& c : components) {
    blocks.push_back({c.bbox_raw, c.bbox_raw.area(), c.label, 0});
  }
  blocks = filter_by_area(std::move(blocks), cfg.min_area);
  for (auto& b : blocks) {
    b.bbox = pad_bbox(b.bbox, cfg.padding, mask.width(), mask.height());
    b.area = b.bbox.area();
  }
  return sort_and_limit(std::move(blocks), cfg.max_blocks);
}

}  // namespace ctxstr
