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
#include <numeric>

#include "ctxstr/localizer.hpp"

namespace ctxstr::serial {
namespace {

class DisjointSet {
 public:
  DisjointSet() : parent_{0} {}

  std::int32_t make() {
    const auto id = static_cast<std::int32_t>(parent_.size());
    parent_.push_back(id);
    return id;
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller id wins so the root of a set is its first-created label.
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a < b) {
      parent_[b] = a;
    } else if (b < a) {
      parent_[a] = b;
    }
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

LabeledMask label_components(const BinaryMask& mask, Connectivity conn) {
  const int w = mask.width();
  const int h = mask.height();
  const bool diag = conn == Connectivity::eight;
  LabeledMask out{w, h, std::vector<std::int32_t>(mask.size(), 0), {}};
  auto& lab = out.labels;
  const auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };

  DisjointSet sets;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      std::int32_t n[4];
      int k = 0;
      if (x > 0 && lab[idx(x - 1, y)]) n[k++] = lab[idx(x - 1, y)];
      if (y > 0) {
        if (lab[idx(x, y - 1)]) n[k++] = lab[idx(x, y - 1)];
        if (diag && x > 0 && lab[idx(x - 1, y - 1)]) n[k++] = lab[idx(x - 1, y - 1)];
        if (diag && x + 1 < w && lab[idx(x + 1, y - 1)]) n[k++] = lab[idx(x + 1, y - 1)];
      }
      if (k == 0) {
        lab[idx(x, y)] = sets.make();
        continue;
      }
      const std::int32_t first = *std::min_element(n, n + k);
      for (int i = 0; i < k; ++i) sets.unite(first, n[i]);
      lab[idx(x, y)] = first;
    }
  }

  std::vector<std::int32_t> dense(sets.size(), 0);
  std::int32_t next = 0;
  for (std::int32_t id = 1; id < static_cast<std::int32_t>(sets.size()); ++id) {
    if (sets.find(id) == id) dense[id] = ++next;
  }
  out.components.resize(next);
  for (std::int32_t i = 0; i < next; ++i) {
    out.components[i].label = i + 1;
    out.components[i].bbox_raw = {w, h, -1, -1};
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto& l = lab[idx(x, y)];
      if (!l) continue;
      l = dense[sets.find(l)];
      auto& c = out.components[l - 1];
      ++c.pixel_count;
      c.bbox_raw.x_min = std::min(c.bbox_raw.x_min, x);
      c.bbox_raw.y_min = std::min(c.bbox_raw.y_min, y);
      c.bbox_raw.x_max = std::max(c.bbox_raw.x_max, x);
      c.bbox_raw.y_max = std::max(c.bbox_raw.y_max, y);
    }
  }
  return out;
}

std::vector<Component> find_components(const BinaryMask& mask, Connectivity conn) {
  return serial::label_components(mask, conn).components;
}

}  // namespace ctxstr::serial
