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

#include "ctxstr/mask_metrics.hpp"

#include "ctxstr/error.hpp"

namespace ctxstr {
namespace {

void check_dims(const BinaryMask& pred, const BinaryMask& gt) {
  if (pred.width() != gt.width() || pred.height() != gt.height()) {
    throw ContractError("mask dimension mismatch: " + std::to_string(pred.width()) + "x" +
                        std::to_string(pred.height()) + " vs " + std::to_string(gt.width()) +
                        "x" + std::to_string(gt.height()));
  }
}

}  // namespace

OverlapCounts overlap_counts(const BinaryMask& pred, const BinaryMask& gt) {
  check_dims(pred, gt);
  const auto p = pred.data();
  const auto g = gt.data();
  const auto n = static_cast<std::int64_t>(p.size());
  std::int64_t np = 0;
  std::int64_t ng = 0;
  std::int64_t ni = 0;
#pragma omp parallel for simd reduction(+ : np, ng, ni) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    np += p[i];
    ng += g[i];
    ni += p[i] & g[i];
  }
  return {np, ng, ni};
}

namespace serial {

OverlapCounts overlap_counts(const BinaryMask& pred, const BinaryMask& gt) {
  check_dims(pred, gt);
  OverlapCounts c;
  for (int y = 0; y < pred.height(); ++y) {
    for (int x = 0; x < pred.width(); ++x) {
      const bool in_p = pred.at(x, y) != 0;
      const bool in_g = gt.at(x, y) != 0;
      c.pred += in_p;
      c.gt += in_g;
      c.intersection += in_p && in_g;
    }
  }
  return c;
}

}  // namespace serial

double fg_iou(const OverlapCounts& c) noexcept {
  const auto uni = c.pred + c.gt - c.intersection;
  if (uni == 0) return 1.0;
  return static_cast<double>(c.intersection) / static_cast<double>(uni);
}

double f1_foreground(const OverlapCounts& c) noexcept {
  const auto denom = c.pred + c.gt;
  if (denom == 0) return 1.0;
  return 2.0 * static_cast<double>(c.intersection) / static_cast<double>(denom);
}

double fg_iou(const BinaryMask& pred, const BinaryMask& gt) {
  return fg_iou(overlap_counts(pred, gt));
}

double f1_foreground(const BinaryMask& pred, const BinaryMask& gt) {
  return f1_foreground(overlap_counts(pred, gt));
}

}  // namespace ctxstr
