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

#include "ctxstr/lexsem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "ctxstr/error.hpp"
#include "ctxstr/unicode.hpp"

namespace ctxstr {

NormalizedText normalize(std::string_view raw) {
  const auto cps = unicode::decode_utf8(raw);
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (const char32_t c : cps) {
    if (unicode::is_white_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(unicode::to_lower(c));
  }
  return NormalizedText(unicode::encode_utf8(out));
}

std::u32string NormalizedText::code_points() const { return unicode::decode_utf8(value_); }

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ContractError("embedding dimension must be >= 1");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw ContractError("embedding has non-finite entries");
  }
}

namespace {

// Longest common subsequence, bit-parallel over a pattern of at most 64
// scalars (Hyyro's formulation of Allison-Dix).
std::size_t lcs_bitparallel(std::u32string_view pattern, std::u32string_view text) {
  std::vector<std::pair<char32_t, std::uint64_t>> masks;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    auto it = std::find_if(masks.begin(), masks.end(),
                           [c = pattern[i]](const auto& m) { return m.first == c; });
    if (it == masks.end()) {
      masks.emplace_back(pattern[i], 0);
      it = std::prev(masks.end());
    }
    it->second |= std::uint64_t{1} << i;
  }
  std::uint64_t s = ~std::uint64_t{0};
  for (const char32_t c : text) {
    const auto it = std::find_if(masks.begin(), masks.end(),
                                 [c](const auto& m) { return m.first == c; });
    if (it == masks.end()) continue;
    const std::uint64_t u = s & it->second;
    s = (s + u) | (s - u);
  }
  const std::uint64_t live =
      pattern.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pattern.size()) - 1;
  return static_cast<std::size_t>(std::popcount(~s & live));
}

std::size_t lcs_rows(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (const char32_t ca : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = ca == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::size_t indel_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  // Substitution at cost 2 never beats delete+insert, so D = |a|+|b|-2*LCS.
  const std::size_t lcs = a.size() <= 64 ? lcs_bitparallel(a, b) : lcs_rows(a, b);
  return a.size() + b.size() - 2 * lcs;
}

double fuzz_ratio(const NormalizedText& a, const NormalizedText& b) {
  const auto ca = a.code_points();
  const auto cb = b.code_points();
  const std::size_t total = ca.size() + cb.size();
  if (total == 0) return 1.0;
  return static_cast<double>(total - indel_distance(ca, cb)) / static_cast<double>(total);
}

double fuzz_ratio_token_best(const NormalizedText& word, const NormalizedText& sentence) {
  if (sentence.empty()) return fuzz_ratio(word, sentence);
  double best = 0.0;
  const std::string& s = sentence.str();
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(' ', start), s.size());
    best = std::max(best, fuzz_ratio(word, normalize(std::string_view(s).substr(start, end - start))));
    start = end + 1;
  }
  return best;
}

double cosine_similarity(const Embedding& u, const Embedding& v) {
  if (u.dim() != v.dim()) {
    throw ContractError("embedding dimension mismatch: " + std::to_string(u.dim()) + " vs " +
                        std::to_string(v.dim()));
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  const auto a = u.values();
  const auto b = v.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    uu += a[i] * a[i];
    vv += b[i] * b[i];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
}

}  // namespace ctxstr
