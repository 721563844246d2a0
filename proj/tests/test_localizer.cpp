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

#include <algorithm>
#include <random>
#include <set>

#include "ctxstr/error.hpp"
#include "ctxstr/localizer.hpp"
#include "oracles.hpp"

namespace ctxstr {
namespace {

BinaryMask mask_from(int w, int h, const std::vector<Pixel>& fg) {
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h, 0);
  for (const auto& p : fg) px[static_cast<std::size_t>(p.y) * w + p.x] = 1;
  return BinaryMask(w, h, std::move(px));
}

BinaryMask squares(int w, int h, const std::vector<BBox>& boxes) {
  std::vector<Pixel> fg;
  for (const auto& b : boxes) {
    for (int y = b.y_min; y <= b.y_max; ++y) {
      for (int x = b.x_min; x <= b.x_max; ++x) fg.push_back({x, y});
    }
  }
  return mask_from(w, h, fg);
}

using Labeler = LabeledMask (*)(const BinaryMask&, Connectivity);

class CclImpl : public ::testing::TestWithParam<Labeler> {};

TEST_P(CclImpl, AllBackground) {
  EXPECT_TRUE(GetParam()(BinaryMask::zeros(8, 8), Connectivity::eight).components.empty());
}

TEST_P(CclImpl, TwoComponents) {
  const auto m = mask_from(4, 4, {{0, 0}, {1, 0}, {3, 3}});
  const auto lm = GetParam()(m, Connectivity::eight);
  ASSERT_EQ(lm.components.size(), 2u);
  EXPECT_EQ(lm.components[0].pixel_count, 2);
  EXPECT_EQ(lm.components[1].pixel_count, 1);
  EXPECT_EQ(lm.components[0].bbox_raw, (BBox{0, 0, 1, 0}));
  EXPECT_EQ(lm.components[1].bbox_raw, (BBox{3, 3, 3, 3}));
}

TEST_P(CclImpl, DiagonalDependsOnConnectivity) {
  const auto m = mask_from(2, 2, {{0, 0}, {1, 1}});
  EXPECT_EQ(GetParam()(m, Connectivity::eight).components.size(), 1u);
  EXPECT_EQ(GetParam()(m, Connectivity::four).components.size(), 2u);
}

TEST_P(CclImpl, LabelsFollowFirstPixelRasterOrder) {
  // A U shape whose right arm starts before the left arm closes: still one label,
  // and the later isolated pixel gets label 2.
  const auto m = mask_from(5, 4, {{0, 0}, {4, 0}, {0, 1}, {4, 1}, {0, 2}, {1, 2}, {2, 2},
                                  {3, 2}, {4, 2}, {2, 0}});
  const auto lm = GetParam()(m, Connectivity::four);
  ASSERT_EQ(lm.components.size(), 2u);
  EXPECT_EQ(lm.labels[0], 1);
  EXPECT_EQ(lm.labels[2], 2);
  EXPECT_EQ(lm.labels[4], 1);
}

TEST_P(CclImpl, MatchesFloodFillOracle) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> side(1, 64);
  std::uniform_real_distribution<double> dens(0.05, 0.8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m = oracle::random_mask(rng, side(rng), side(rng), dens(rng));
    for (const bool eight : {false, true}) {
      const auto expected = oracle::flood_fill(m, eight);
      const auto got = GetParam()(m, eight ? Connectivity::eight : Connectivity::four);
      ASSERT_EQ(got.labels, expected.labels) << "trial " << trial;
      ASSERT_EQ(got.components.size(), expected.pixels.size());
      for (std::size_t i = 0; i < got.components.size(); ++i) {
        EXPECT_EQ(got.components[i].pixel_count,
                  static_cast<std::int64_t>(expected.pixels[i].size()));
        EXPECT_EQ(got.components[i].bbox_raw, component_bbox(expected.pixels[i]));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Kernels, CclImpl,
                         ::testing::Values(static_cast<Labeler>(&label_components),
                                           static_cast<Labeler>(&serial::label_components)),
                         [](const ::testing::TestParamInfo<Labeler>& info) {
                           return std::string(info.index == 0 ? "Parallel" : "Serial");
                         });

TEST(Ccl, PartitionProperty) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = oracle::random_blob_mask(rng, 48, 40, 12);
    const auto lm = label_components(m, Connectivity::eight);
    std::int64_t total = 0;
    for (const auto& c : lm.components) {
      EXPECT_GE(c.pixel_count, 1);
      total += c.pixel_count;
    }
    EXPECT_EQ(total, static_cast<std::int64_t>(m.foreground_count()));
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_EQ(lm.labels[i] != 0, m.data()[i] != 0);
    }
  }
}

TEST(ComponentBBox, Examples) {
  EXPECT_EQ(component_bbox({{5, 7}}), (BBox{5, 7, 5, 7}));
  EXPECT_EQ(component_bbox({{1, 2}, {4, 2}, {2, 9}}), (BBox{1, 2, 4, 9}));
  std::vector<Pixel> row;
  for (int x = 0; x < 10; ++x) row.push_back({x, 3});
  EXPECT_EQ(component_bbox(row), (BBox{0, 3, 9, 3}));
  EXPECT_THROW(component_bbox({}), ContractError);
}

TEST(PadBBox, Examples) {
  EXPECT_EQ(pad_bbox({2, 3, 4, 5}, 0, 10, 10), (BBox{2, 3, 4, 5}));
  EXPECT_EQ(pad_bbox({0, 0, 2, 2}, 5, 10, 10), (BBox{0, 0, 7, 7}));
  EXPECT_EQ(pad_bbox({4, 4, 5, 5}, 100, 10, 10), (BBox{0, 0, 9, 9}));
}

TextBlock block(int area, int y, int x, int label) {
  return {{x, y, x, y}, area, label, 0};
}

TEST(FilterByArea, Examples) {
  const std::vector<TextBlock> blocks = {block(4, 0, 0, 1), block(100, 0, 1, 2),
                                         block(9, 0, 2, 3)};
  EXPECT_EQ(filter_by_area(blocks, 0), blocks);
  const auto kept = filter_by_area(blocks, 10);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].area, 100);
  EXPECT_TRUE(filter_by_area(blocks, 1000).empty());
}

TEST(SortAndLimit, AreasDescending) {
  const auto out = sort_and_limit({block(9, 0, 0, 1), block(25, 0, 1, 2), block(16, 0, 2, 3)}, 2);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].area, 25);
  EXPECT_EQ(out[1].area, 16);
  EXPECT_EQ(out[0].rank, 0);
  EXPECT_EQ(out[1].rank, 1);
}

TEST(SortAndLimit, TieBreakReadingOrder) {
  // 12 equal-area blocks on a 4x3 grid, given in scrambled order.
  std::vector<TextBlock> blocks;
  int label = 1;
  for (int y : {20, 0, 10}) {
    for (int x : {30, 0, 20, 10}) blocks.push_back(block(50, y, x, label++));
  }
  const auto out = sort_and_limit(blocks, 10);
  ASSERT_EQ(out.size(), 10u);
  // Reading order: rows y=0,10,20; within a row x ascending.
  const std::vector<std::pair<int, int>> expected = {{0, 0},   {0, 10},  {0, 20},  {0, 30},
                                                     {10, 0},  {10, 10}, {10, 20}, {10, 30},
                                                     {20, 0},  {20, 10}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].bbox.y_min, expected[i].first);
    EXPECT_EQ(out[i].bbox.x_min, expected[i].second);
    EXPECT_EQ(out[i].rank, static_cast<int>(i));
  }
  // Identical geometry falls back to the label.
  const auto same = sort_and_limit({block(5, 1, 1, 7), block(5, 1, 1, 3)}, 10);
  EXPECT_EQ(same[0].source_component, 3);
}

TEST(SortAndLimit, FewerThanMax) {
  const auto out = sort_and_limit({block(1, 0, 0, 1), block(3, 0, 0, 2)}, 10);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].area, 3);
}

TEST(Localize, AllZero) { EXPECT_TRUE(localize(BinaryMask::zeros(16, 16)).empty()); }

TEST(Localize, ThreeSquares) {
  const auto m = squares(40, 20, {{2, 2, 6, 6}, {15, 10, 19, 14}, {30, 3, 34, 7}});
  LocalizerConfig cfg;
  cfg.padding = 1;
  cfg.min_area = 4;
  cfg.max_blocks = 10;
  const auto blocks = localize(m, cfg);
  ASSERT_EQ(blocks.size(), 3u);
  // Equal padded areas (6*6), so reading order decides.
  EXPECT_EQ(blocks[0].bbox, (BBox{1, 1, 7, 7}));
  EXPECT_EQ(blocks[1].bbox, (BBox{29, 2, 35, 8}));
  EXPECT_EQ(blocks[2].bbox, (BBox{14, 9, 20, 15}));
  for (const auto& b : blocks) EXPECT_EQ(b.area, 36);
  EXPECT_EQ(blocks, oracle::localize(m, 1, 4, 10, true));
}

TEST(Localize, CapsAtTenOfTwelve) {
  std::vector<BBox> boxes;
  for (int i = 0; i < 12; ++i) {
    const int size = 3 + i % 5;  // several area ties
    const int x = (i % 4) * 12;
    const int y = (i / 4) * 12;
    boxes.push_back({x, y, x + size - 1, y + size - 1});
  }
  const auto m = squares(48, 36, boxes);
  LocalizerConfig cfg;
  cfg.padding = 0;
  cfg.min_area = 0;
  ASSERT_EQ(find_components(m).size(), 12u);
  const auto blocks = localize(m, cfg);
  EXPECT_EQ(blocks.size(), 10u);
  EXPECT_EQ(blocks, oracle::localize(m, 0, 0, 10, true));
}

TEST(Localize, SingleComponentMatchesGlobalBox) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = oracle::random_blob_mask(rng, 30, 30, 1);
    const auto ff = oracle::flood_fill(m, true);
    if (ff.pixels.size() != 1) continue;
    std::vector<Pixel> all;
    for (int y = 0; y < 30; ++y) {
      for (int x = 0; x < 30; ++x) {
        if (m.at(x, y)) all.push_back({x, y});
      }
    }
    LocalizerConfig cfg;
    cfg.padding = 3;
    cfg.min_area = 0;
    const auto blocks = localize(m, cfg);
    ASSERT_EQ(blocks.size(), 1u);
    EXPECT_EQ(blocks[0].bbox, pad_bbox(component_bbox(all), 3, 30, 30));
  }
}

TEST(Localize, CoverageAndBounds) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = oracle::random_blob_mask(rng, 50, 30, 8);
    LocalizerConfig cfg;
    cfg.padding = trial % 4;
    cfg.min_area = trial % 30;
    cfg.max_blocks = 1 + trial % 12;
    const auto blocks = localize(m, cfg);
    ASSERT_LE(blocks.size(), static_cast<std::size_t>(cfg.max_blocks));
    const auto lm = label_components(m);
    std::set<int> ranks;
    for (const auto& b : blocks) {
      EXPECT_GE(b.bbox.x_min, 0);
      EXPECT_GE(b.bbox.y_min, 0);
      EXPECT_LT(b.bbox.x_max, m.width());
      EXPECT_LT(b.bbox.y_max, m.height());
      EXPECT_EQ(b.area, b.bbox.area());
      ranks.insert(b.rank);
      for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
          if (lm.labels[static_cast<std::size_t>(y) * m.width() + x] == b.source_component) {
            EXPECT_TRUE(b.bbox.contains(x, y));
          }
        }
      }
    }
    EXPECT_EQ(ranks.size(), blocks.size());
    if (!blocks.empty()) EXPECT_EQ(*ranks.rbegin(), static_cast<int>(blocks.size()) - 1);
  }
}

TEST(Localize, Monotonicity) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = oracle::random_blob_mask(rng, 64, 64, 10);
    LocalizerConfig base;
    base.padding = 1;
    base.min_area = 10;
    base.max_blocks = 100;

    // Larger padding: every block (matched by component) contains the old one.
    auto wider = base;
    wider.padding = 4;
    const auto a = localize(m, base);
    const auto b = localize(m, wider);
    for (const auto& x : a) {
      const auto it = std::find_if(b.begin(), b.end(), [&](const TextBlock& y) {
        return y.source_component == x.source_component;
      });
      ASSERT_NE(it, b.end());
      EXPECT_TRUE(it->bbox.contains(x.bbox));
    }

    // Larger min_area never adds blocks; larger max_blocks never removes them.
    std::size_t prev = localize(m, base).size();
    for (std::int64_t area : {20, 40, 80, 160, 320}) {
      auto c = base;
      c.min_area = area;
      const auto n = localize(m, c).size();
      EXPECT_LE(n, prev);
      prev = n;
    }
    prev = 0;
    for (int cap = 1; cap <= 12; ++cap) {
      auto c = base;
      c.max_blocks = cap;
      const auto n = localize(m, c).size();
      EXPECT_GE(n, prev);
      prev = n;
    }
  }
}

TEST(LocalizerConfig, Validation) {
  LocalizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.padding = -1;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.min_area = -5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.max_blocks = 0;
  EXPECT_THROW(localize(BinaryMask::zeros(2, 2), c), ValidationError);
}

}  // namespace
}  // namespace ctxstr
