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

#include "ctxstr/mask.hpp"

namespace ctxstr {

struct OverlapCounts {
  std::int64_t pred = 0;
  std::int64_t gt = 0;
  std::int64_t intersection = 0;
  friend bool operator==(const OverlapCounts&, const OverlapCounts&) = default;
};

// Foreground counts of both masks and of their intersection. Throws
// ContractError when the dimensions differ.
OverlapCounts overlap_counts(const BinaryMask& pred, const BinaryMask& gt);

// |P & G| / |P | G|, 1 when both are empty.
double fg_iou(const BinaryMask& pred, const BinaryMask& gt);
double fg_iou(const OverlapCounts& c) noexcept;

// 2|P & G| / (|P| + |G|), 1 when both are empty.
double f1_foreground(const BinaryMask& pred, const BinaryMask& gt);
double f1_foreground(const OverlapCounts& c) noexcept;

namespace serial {
OverlapCounts overlap_counts(const BinaryMask& pred, const BinaryMask& gt);
}

}  // namespace ctxstr
