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

#include "ctxstr/lexsem.hpp"

namespace ctxstr {

// t1: recognition on the full image, t2: scene description, t3: recognition
// on a cropped block. Empty strings are legal values.
struct CandidateTexts {
  NormalizedText t1;
  NormalizedText t2;
  NormalizedText t3;
};

// How the lexical score compares a recognized word with the description.
enum class LexicalMode {
  whole,       // fuzz ratio against the entire description
  token_best,  // best fuzz ratio against any single description token
};

struct GateConfig {
  double alpha = 0.6;
  double beta = 0.4;
  double tau = 0.8;
  LexicalMode lexical = LexicalMode::whole;

  // alpha, beta >= 0, alpha + beta == 1 (1e-9), tau in [0,1].
  void validate() const;
};

enum class Candidate { t1, t3 };

struct ScoreBreakdown {
  double s1 = 0.0;
  double s3 = 0.0;
  double l1 = 0.0;
  double l3 = 0.0;
  Candidate selected = Candidate::t3;
  NormalizedText selected_text;
  double s_selected = 0.0;
  double l_selected = 0.0;
  double confidence = 0.0;
};

enum class Outcome { confident, fallback };

struct RoutingDecision {
  Outcome outcome = Outcome::fallback;
  NormalizedText final_text;  // selected text when confident, empty otherwise
  ScoreBreakdown breakdown;
};

// Semantic and lexical agreement of t1/t3 with t2; t1 wins only on s1 > s3.
// e1..e3 are the embeddings of t1..t3. Dimension mismatch throws ContractError.
ScoreBreakdown score(const CandidateTexts& texts, const Embedding& e1, const Embedding& e2,
                     const Embedding& e3, const GateConfig& cfg);

// Confident iff confidence >= tau.
RoutingDecision route(const ScoreBreakdown& breakdown, const GateConfig& cfg);

// Image-level aggregation of per-block decisions.
enum class ImagePolicy { any, all, majority };

bool image_falls_back(std::span<const RoutingDecision> decisions, ImagePolicy policy);

std::string_view to_string(Candidate c);
std::string_view to_string(Outcome o);
std::string_view to_string(ImagePolicy p);
std::string_view to_string(LexicalMode m);
ImagePolicy parse_image_policy(std::string_view s);
LexicalMode parse_lexical_mode(std::string_view s);

}  // namespace ctxstr
