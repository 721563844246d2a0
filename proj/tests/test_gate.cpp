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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "ctxstr/error.hpp"
#include "ctxstr/gate.hpp"

namespace ctxstr {
namespace {

// Unit vector in the plane at a given cosine to (1, 0).
Embedding at_cos(double c) { return Embedding({c, std::sqrt(1.0 - c * c)}); }

const Embedding kAxis({1.0, 0.0});

CandidateTexts texts(std::string_view t1, std::string_view t2, std::string_view t3) {
  return {normalize(t1), normalize(t2), normalize(t3)};
}

ScoreBreakdown with_confidence(double c) {
  ScoreBreakdown b;
  b.selected_text = normalize("exit");
  b.confidence = c;
  return b;
}

TEST(Score, SymmetricCandidatesSelectT3) {
  const auto b = score(texts("exit", "an exit", "exit"), at_cos(0.5), kAxis, at_cos(0.5), {});
  EXPECT_EQ(b.s1, b.s3);
  EXPECT_EQ(b.selected, Candidate::t3);
  EXPECT_EQ(b.selected_text.str(), "exit");
  EXPECT_DOUBLE_EQ(b.confidence, 0.6 * b.s1 + 0.4 * b.l1);
}

TEST(Score, HigherS1SelectsT1) {
  const auto b = score(texts("open", "ac", "ab"), at_cos(0.9), kAxis, at_cos(0.7), {});
  EXPECT_NEAR(b.s1, 0.9, 1e-12);
  EXPECT_NEAR(b.s3, 0.7, 1e-12);
  EXPECT_EQ(b.selected, Candidate::t1);
  EXPECT_EQ(b.selected_text.str(), "open");
  EXPECT_DOUBLE_EQ(b.s_selected, b.s1);
  EXPECT_DOUBLE_EQ(b.l_selected, b.l1);
}

TEST(Score, WeightedConfidence) {
  // fuzz("ab", "ac") = (4 - 2) / 4 = 0.5.
  const auto b = score(texts("zz", "ac", "ab"), at_cos(0.1), kAxis, at_cos(0.9), {});
  EXPECT_EQ(b.selected, Candidate::t3);
  EXPECT_DOUBLE_EQ(b.l3, 0.5);
  EXPECT_NEAR(b.confidence, 0.74, 1e-12);
  EXPECT_EQ(route(b, {}).outcome, Outcome::fallback);
}

TEST(Score, DimensionMismatch) {
  EXPECT_THROW(score(texts("a", "b", "c"), Embedding({1, 0, 0}), kAxis, kAxis, {}),
               ContractError);
}

TEST(Route, Examples) {
  const GateConfig cfg;
  EXPECT_EQ(route(with_confidence(0.74), cfg).outcome, Outcome::fallback);
  EXPECT_TRUE(route(with_confidence(0.74), cfg).final_text.empty());
  const auto at = route(with_confidence(0.80), cfg);
  EXPECT_EQ(at.outcome, Outcome::confident);
  EXPECT_EQ(at.final_text.str(), "exit");
  for (double tau : {0.0, 0.3, 0.8, 1.0}) {
    GateConfig c;
    c.tau = tau;
    EXPECT_EQ(route(with_confidence(1.0), c).outcome, Outcome::confident);
  }
}

TEST(Route, MonotoneInTau) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto b = with_confidence(u(rng));
    bool was_fallback = false;
    for (int k = 0; k <= 20; ++k) {
      GateConfig c;
      c.tau = k / 20.0;
      const bool fb = route(b, c).outcome == Outcome::fallback;
      EXPECT_TRUE(fb || !was_fallback);
      was_fallback = fb;
    }
  }
}

std::vector<double> random_vec(std::mt19937& rng, std::size_t d) {
  std::normal_distribution<double> nd;
  std::vector<double> v(d);
  for (auto& x : v) x = nd(rng);
  return v;
}

Embedding scaled(const std::vector<double>& v, double k) {
  auto w = v;
  for (auto& x : w) x *= k;
  return Embedding(w);
}

TEST(Score, SelectionInvariantUnderScaling) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> k(0.01, 100.0);
  const auto t = texts("exit", "an exit sign", "exot");
  for (int i = 0; i < 500; ++i) {
    const auto a = random_vec(rng, 8), b = random_vec(rng, 8), c = random_vec(rng, 8);
    const auto base = score(t, Embedding(a), Embedding(b), Embedding(c), {});
    const double s = k(rng);
    const auto sc = score(t, scaled(a, s), scaled(b, s), scaled(c, s), {});
    EXPECT_EQ(base.selected, sc.selected);
    EXPECT_NEAR(base.s1, sc.s1, 1e-12);
    EXPECT_NEAR(base.s3, sc.s3, 1e-12);
    EXPECT_EQ(base.l1, sc.l1);
    EXPECT_EQ(base.l3, sc.l3);
    EXPECT_NEAR(base.confidence, sc.confidence, 1e-12);
  }
}

TEST(Score, WeightExtremes) {
  std::mt19937 rng(9);
  const auto t = texts("stop", "a red stop sign", "stp");
  for (int i = 0; i < 200; ++i) {
    const Embedding a(random_vec(rng, 4)), b(random_vec(rng, 4)), c(random_vec(rng, 4));
    GateConfig sem{1.0, 0.0, 0.8, LexicalMode::whole};
    GateConfig lex{0.0, 1.0, 0.8, LexicalMode::whole};
    const auto bs = score(t, a, b, c, sem);
    const auto bl = score(t, a, b, c, lex);
    EXPECT_DOUBLE_EQ(bs.confidence, bs.s_selected);
    EXPECT_DOUBLE_EQ(bl.confidence, bl.l_selected);
  }
}

TEST(Score, Deterministic) {
  std::mt19937 rng(10);
  const Embedding a(random_vec(rng, 16)), b(random_vec(rng, 16)), c(random_vec(rng, 16));
  const auto t = texts("exit", "exit sign", "exit");
  const auto x = route(score(t, a, b, c, {}), {});
  const auto y = route(score(t, a, b, c, {}), {});
  EXPECT_EQ(std::memcmp(&x.breakdown.confidence, &y.breakdown.confidence, sizeof(double)), 0);
  EXPECT_EQ(x.outcome, y.outcome);
  EXPECT_EQ(x.final_text, y.final_text);
}

TEST(Score, PerfectContext) {
  // t1 verbatim in t2 and e1 == e2: s1 == 1 and confident for tau <= alpha + beta * l1.
  const auto t = texts("exit", "exit sign", "other");
  const Embedding e({0.3, 0.4, 0.5});
  const auto b = score(t, e, e, Embedding({-1, 0, 0}), {});
  EXPECT_DOUBLE_EQ(b.s1, 1.0);
  EXPECT_EQ(b.selected, Candidate::t1);
  const double bound = 0.6 + 0.4 * b.l1;
  for (double tau : {0.0, 0.5, bound}) {
    GateConfig c;
    c.tau = tau;
    EXPECT_EQ(route(b, c).outcome, Outcome::confident) << tau;
  }
}

TEST(Score, TokenBestLexical) {
  GateConfig c;
  c.lexical = LexicalMode::token_best;
  const auto b = score(texts("x", "an exit sign", "exit"), kAxis, kAxis, kAxis, c);
  EXPECT_DOUBLE_EQ(b.l3, 1.0);
  EXPECT_DOUBLE_EQ(b.confidence, 1.0);
}

std::vector<RoutingDecision> decisions(std::initializer_list<bool> fallbacks) {
  std::vector<RoutingDecision> out;
  for (bool fb : fallbacks) {
    RoutingDecision d;
    d.outcome = fb ? Outcome::fallback : Outcome::confident;
    out.push_back(d);
  }
  return out;
}

TEST(ImagePolicy, Aggregation) {
  const auto none = decisions({});
  const auto one_of_three = decisions({false, true, false});
  const auto two_of_three = decisions({true, true, false});
  const auto half = decisions({true, false});
  const auto all = decisions({true, true});
  EXPECT_FALSE(image_falls_back(none, ImagePolicy::any));
  EXPECT_FALSE(image_falls_back(none, ImagePolicy::all));
  EXPECT_FALSE(image_falls_back(none, ImagePolicy::majority));
  EXPECT_TRUE(image_falls_back(one_of_three, ImagePolicy::any));
  EXPECT_FALSE(image_falls_back(one_of_three, ImagePolicy::all));
  EXPECT_FALSE(image_falls_back(one_of_three, ImagePolicy::majority));
  EXPECT_TRUE(image_falls_back(two_of_three, ImagePolicy::majority));
  EXPECT_FALSE(image_falls_back(half, ImagePolicy::majority));
  EXPECT_TRUE(image_falls_back(all, ImagePolicy::all));
}

TEST(GateConfig, Validation) {
  EXPECT_NO_THROW(GateConfig{}.validate());
  EXPECT_NO_THROW((GateConfig{0.7, 0.3, 0.8, LexicalMode::whole}.validate()));
  EXPECT_THROW((GateConfig{0.7, 0.4, 0.8, LexicalMode::whole}.validate()), ValidationError);
  EXPECT_THROW((GateConfig{-0.1, 1.1, 0.8, LexicalMode::whole}.validate()), ValidationError);
  EXPECT_THROW((GateConfig{0.6, 0.4, 1.5, LexicalMode::whole}.validate()), ValidationError);
  EXPECT_THROW((GateConfig{std::nan(""), 0.4, 0.8, LexicalMode::whole}.validate()),
               ValidationError);
}

TEST(GateStrings, RoundTrip) {
  for (auto p : {ImagePolicy::any, ImagePolicy::all, ImagePolicy::majority}) {
    EXPECT_EQ(parse_image_policy(to_string(p)), p);
  }
  for (auto m : {LexicalMode::whole, LexicalMode::token_best}) {
    EXPECT_EQ(parse_lexical_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_image_policy("some"), ValidationError);
  EXPECT_THROW(parse_lexical_mode("fuzzy"), ValidationError);
  EXPECT_EQ(to_string(Candidate::t1), "T1");
  EXPECT_EQ(to_string(Outcome::fallback), "fallback");
}

}  // namespace
}  // namespace ctxstr
