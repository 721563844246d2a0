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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctxstr {

// Lowercased, whitespace-collapsed, trimmed UTF-8 text. Only normalize()
// produces one, so holding a NormalizedText is proof of normalization.
class NormalizedText {
 public:
  NormalizedText() = default;

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  // Unicode scalar values, the unit edit distance counts in.
  std::u32string code_points() const;

  friend bool operator==(const NormalizedText&, const NormalizedText&) = default;
  friend auto operator<=>(const NormalizedText&, const NormalizedText&) = default;

 private:
  friend NormalizedText normalize(std::string_view raw);
  explicit NormalizedText(std::string value) : value_(std::move(value)) {}
  std::string value_;
};

NormalizedText normalize(std::string_view raw);

// Dense vector with finite entries and dimension >= 1.
class Embedding {
 public:
  explicit Embedding(std::vector<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

// Edit distance with unit insert/delete and substitution cost 2.
std::size_t indel_distance(std::u32string_view a, std::u32string_view b);

// (|a| + |b| - D(a,b)) / (|a| + |b|) with D the cost-2-substitution distance.
// In [0,1]; two empty strings score 1.
double fuzz_ratio(const NormalizedText& a, const NormalizedText& b);

// Best fuzz_ratio of `word` against each whitespace token of `sentence`.
// A sentence with no tokens scores like the empty string.
double fuzz_ratio_token_best(const NormalizedText& word, const NormalizedText& sentence);

// dot(u,v) / (|u| |v|); 0 when either norm is 0. Throws ContractError on
// dimension mismatch.
double cosine_similarity(const Embedding& u, const Embedding& v);

}  // namespace ctxstr
