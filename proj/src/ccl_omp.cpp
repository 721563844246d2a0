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

#include <omp.h>

#include <algorithm>
#include <limits>

#include "ctxstr/error.hpp"
#include "ctxstr/localizer.hpp"

namespace ctxstr {
namespace {

using Index = std::int32_t;

// Union-find over pixel indices. A root is always the smallest index of its
// set, which makes it the set's first pixel in raster order.
struct PixelForest {
  std::vector<Index> parent;

  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  Index find_readonly(Index x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }

  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a < b) {
      parent[b] = a;
    } else if (b < a) {
      parent[a] = b;
    }
  }
};

struct Strip {
  int row_begin;
  int row_end;
};

std::vector<Strip> make_strips(int height) {
  const int n = std::clamp(omp_get_max_threads(), 1, height);
  std::vector<Strip> strips(n);
  for (int i = 0; i < n; ++i) {
    strips[i] = {static_cast<int>(static_cast<long>(height) * i / n),
                 static_cast<int>(static_cast<long>(height) * (i + 1) / n)};
  }
  return strips;
}

}  // namespace

LabeledMask label_components(const BinaryMask& mask, Connectivity conn) {
  const int w = mask.width();
  const int h = mask.height();
  if (mask.size() >= static_cast<std::size_t>(std::numeric_limits<Index>::max())) {
    throw ContractError("mask too large for 32-bit pixel indices");
  }
  const bool diag = conn == Connectivity::eight;
  const auto px = mask.data();
  LabeledMask out{w, h, std::vector<Index>(mask.size(), 0), {}};
  auto& lab = out.labels;

  PixelForest forest{std::vector<Index>(mask.size())};
  const auto strips = make_strips(h);
  const int nstrips = static_cast<int>(strips.size());

  // Local pass: each strip only links pixels inside its own rows.
#pragma omp parallel for schedule(static)
  for (int s = 0; s < nstrips; ++s) {
    for (int y = strips[s].row_begin; y < strips[s].row_end; ++y) {
      const bool has_up = y > strips[s].row_begin;
      for (int x = 0; x < w; ++x) {
        const Index p = y * w + x;
        forest.parent[p] = p;
        if (!px[p]) continue;
        if (x > 0 && px[p - 1]) forest.unite(p, p - 1);
        if (!has_up) continue;
        const Index up = p - w;
        if (px[up]) forest.unite(p, up);
        if (diag && x > 0 && px[up - 1]) forest.unite(p, up - 1);
        if (diag && x + 1 < w && px[up + 1]) forest.unite(p, up + 1);
      }
    }
  }

  // Stitch the first row of each strip to the last row of the one above.
  for (int s = 1; s < nstrips; ++s) {
    const int y = strips[s].row_begin;
    for (int x = 0; x < w; ++x) {
      const Index p = y * w + x;
      if (!px[p]) continue;
      const Index up = p - w;
      if (px[up]) forest.unite(p, up);
      if (diag && x > 0 && px[up - 1]) forest.unite(p, up - 1);
      if (diag && x + 1 < w && px[up + 1]) forest.unite(p, up + 1);
    }
  }

  // Resolve roots, count them per strip, then hand out dense labels in raster
  // order via an exclusive prefix over strips.
  std::vector<Index> roots_in_strip(nstrips + 1, 0);
#pragma omp parallel for schedule(static)
  for (int s = 0; s < nstrips; ++s) {
    Index count = 0;
    const Index begin = strips[s].row_begin * w;
    const Index end = strips[s].row_end * w;
    for (Index p = begin; p < end; ++p) {
      if (!px[p]) continue;
      lab[p] = forest.find_readonly(p);
      if (lab[p] == p) ++count;
    }
    roots_in_strip[s + 1] = count;
  }
  for (int s = 0; s < nstrips; ++s) roots_in_strip[s + 1] += roots_in_strip[s];
  const Index ncomp = roots_in_strip[nstrips];

  // parent[] is free now; reuse it as root -> dense label.
#pragma omp parallel for schedule(static)
  for (int s = 0; s < nstrips; ++s) {
    Index next = roots_in_strip[s];
    const Index begin = strips[s].row_begin * w;
    const Index end = strips[s].row_end * w;
    for (Index p = begin; p < end; ++p) {
      if (px[p] && lab[p] == p) forest.parent[p] = ++next;
    }
  }

  std::vector<std::vector<Component>> partial(nstrips);
#pragma omp parallel for schedule(static)
  for (int s = 0; s < nstrips; ++s) {
    auto& local = partial[s];
    local.assign(ncomp, Component{0, 0, {w, h, -1, -1}});
    for (int y = strips[s].row_begin; y < strips[s].row_end; ++y) {
      for (int x = 0; x < w; ++x) {
        const Index p = y * w + x;
        if (!px[p]) continue;
        lab[p] = forest.parent[lab[p]];
        auto& c = local[lab[p] - 1];
        ++c.pixel_count;
        c.bbox_raw.x_min = std::min(c.bbox_raw.x_min, x);
        c.bbox_raw.y_min = std::min(c.bbox_raw.y_min, y);
        c.bbox_raw.x_max = std::max(c.bbox_raw.x_max, x);
        c.bbox_raw.y_max = std::max(c.bbox_raw.y_max, y);
      }
    }
  }

  if (nstrips == 1) {
    out.components = std::move(partial[0]);
    for (Index i = 0; i < ncomp; ++i) out.components[i].label = i + 1;
    return out;
  }
  out.components.assign(ncomp, Component{0, 0, {w, h, -1, -1}});
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < ncomp; ++i) {
    auto& c = out.components[i];
    c.label = i + 1;
    for (const auto& local : partial) {
      const auto& l = local[i];
      if (l.pixel_count == 0) continue;
      c.pixel_count += l.pixel_count;
      c.bbox_raw.x_min = std::min(c.bbox_raw.x_min, l.bbox_raw.x_min);
      c.bbox_raw.y_min = std::min(c.bbox_raw.y_min, l.bbox_raw.y_min);
      c.bbox_raw.x_max = std::max(c.bbox_raw.x_max, l.bbox_raw.x_max);
      c.bbox_raw.y_max = std::max(c.bbox_raw.y_max, l.bbox_raw.y_max);
    }
  }
  return out;
}

std::vector<Component> find_components(const BinaryMask& mask, Connectivity conn) {
  return ctxstr::label_components(mask, conn).components;
}

}  // namespace ctxstr
