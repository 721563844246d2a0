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

#include "ctxstr/gate.hpp"

#include <algorithm>
#include <cmath>

#include "ctxstr/error.hpp"

namespace ctxstr {

void GateConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw ValidationError("alpha and beta must be non-negative");
  }
  if (std::abs(alpha + beta - 1.0) > 1e-9) {
    throw ValidationError("alpha + beta must equal 1, got " + std::to_string(alpha + beta));
  }
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw ValidationError("tau must lie in [0,1], got " + std::to_string(tau));
  }
}

namespace {

double lexical(const NormalizedText& text, const NormalizedText& description, LexicalMode mode) {
  return mode == LexicalMode::token_best ? fuzz_ratio_token_best(text, description)
                                         : fuzz_ratio(text, description);
}

}  // namespace

ScoreBreakdown score(const CandidateTexts& texts, const Embedding& e1, const Embedding& e2,
                     const Embedding& e3, const GateConfig& cfg) {
  ScoreBreakdown b;
  b.s1 = cosine_similarity(e1, e2);
  b.s3 = cosine_similarity(e3, e2);
  b.l1 = lexical(texts.t1, texts.t2, cfg.lexical);
  b.l3 = lexical(texts.t3, texts.t2, cfg.lexical);
  if (b.s1 > b.s3) {
    b.selected = Candidate::t1;
    b.selected_text = texts.t1;
    b.s_selected = b.s1;
    b.l_selected = b.l1;
  } else {
    b.selected = Candidate::t3;
    b.selected_text = texts.t3;
    b.s_selected = b.s3;
    b.l_selected = b.l3;
  }
  b.confidence = cfg.alpha * b.s_selected + cfg.beta * b.l_selected;
  return b;
}

RoutingDecision route(const ScoreBreakdown& breakdown, const GateConfig& cfg) {
  RoutingDecision d;
  d.breakdown = breakdown;
  if (breakdown.confidence >= cfg.tau) {
    d.outcome = Outcome::confident;
    d.final_text = breakdown.selected_text;
  }
  return d;
}

bool image_falls_back(std::span<const RoutingDecision> decisions, ImagePolicy policy) {
  const auto fallbacks = static_cast<std::size_t>(
      std::count_if(decisions.begin(), decisions.end(),
                    [](const RoutingDecision& d) { return d.outcome == Outcome::fallback; }));
  switch (policy) {
    case ImagePolicy::any:
      return fallbacks > 0;
    case ImagePolicy::all:
      return !decisions.empty() && fallbacks == decisions.size();
    case ImagePolicy::majority:
      return 2 * fallbacks > decisions.size();
  }
  return false;
}

std::string_view to_string(Candidate c) { return c == Candidate::t1 ? "T1" : "T3"; }

std::string_view to_string(Outcome o) {
  return o == Outcome::confident ? "confident" : "fallback";
}

std::string_view to_string(ImagePolicy p) {
  switch (p) {
    case ImagePolicy::any: return "any";
    case ImagePolicy::all: return "all";
    case ImagePolicy::majority: return "majority";
  }
  return "any";
}

std::string_view to_string(LexicalMode m) {
  return m == LexicalMode::token_best ? "token_best" : "whole";
}

ImagePolicy parse_image_policy(std::string_view s) {
  if (s == "any") return ImagePolicy::any;
  if (s == "all") return ImagePolicy::all;
  if (s == "majority") return ImagePolicy::majority;
  throw ValidationError("image-level fallback policy must be any|all|majority, got '" +
                        std::string(s) + "'");
}

LexicalMode parse_lexical_mode(std::string_view s) {
  if (s == "whole") return LexicalMode::whole;
  if (s == "token_best") return LexicalMode::token_best;
  throw ValidationError("lexical mode must be whole|token_best, got '" + std::string(s) + "'");
}

}  // namespace ctxstr
