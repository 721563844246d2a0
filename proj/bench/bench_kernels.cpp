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

// Serial reference vs OpenMP kernels: connected-component labeling, mask
// overlap counting and batch gating. Prints best-of-N wall time per kernel.
//
//   ctxstr_bench [side=1024] [density=0.3] [reps=10]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>

#include "ctxstr/adapters.hpp"
#include "ctxstr/gate.hpp"
#include "ctxstr/localizer.hpp"
#include "ctxstr/mask_metrics.hpp"

using namespace ctxstr;

namespace {

template <typename F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

BinaryMask random_mask(int side, double density, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution fg(density);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(side) * side);
  for (auto& p : px) p = fg(rng) ? 1 : 0;
  return BinaryMask(side, side, std::move(px));
}

void line(const char* name, double serial, double parallel) {
  std::cout << std::left << std::setw(26) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(12) << serial << std::setw(12) << parallel
            << std::setw(9) << std::setprecision(2) << serial / parallel << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
  const int side = argc > 1 ? std::atoi(argv[1]) : 1024;
  const double density = argc > 2 ? std::atof(argv[2]) : 0.3;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 10;
  if (side < 1 || reps < 1 || density < 0.0 || density > 1.0) {
    std::cerr << "usage: ctxstr_bench [side] [density] [reps]\n";
    return 1;
  }

  std::cout << "threads " << omp_get_max_threads() << ", mask " << side << "x" << side
            << ", density " << density << ", best of " << reps << "\n\n";
  std::cout << std::left << std::setw(26) << "kernel" << std::right << std::setw(12)
            << "serial ms" << std::setw(12) << "omp ms" << std::setw(10) << "speedup\n";

  const auto a = random_mask(side, density, 1);
  const auto b = random_mask(side, density, 2);

  std::size_t sink = 0;
  for (const auto conn : {Connectivity::four, Connectivity::eight}) {
    const double s = best_ms(reps, [&] { sink += serial::find_components(a, conn).size(); });
    const double p = best_ms(reps, [&] { sink += find_components(a, conn).size(); });
    line(conn == Connectivity::four ? "ccl (4-conn)" : "ccl (8-conn)", s, p);
  }
  {
    const auto empty = BinaryMask::zeros(side, side);
    const double s = best_ms(reps, [&] { sink += serial::find_components(empty).size(); });
    const double p = best_ms(reps, [&] { sink += find_components(empty).size(); });
    line("ccl (background)", s, p);
  }
  {
    const double s = best_ms(reps, [&] { sink += serial::overlap_counts(a, b).intersection; });
    const double p = best_ms(reps, [&] { sink += overlap_counts(a, b).intersection; });
    line("mask overlap", s, p);
  }
  {
    // Gate 20k blocks with toy embeddings, serial loop vs parallel for.
    const int n = 20000;
    std::vector<CandidateTexts> texts;
    std::vector<Embedding> e1, e2, e3;
    for (int i = 0; i < n; ++i) {
      const std::string word = "word" + std::to_string(i % 97);
      texts.push_back({normalize(word), normalize("a sign that says " + word),
                       normalize(word + "s")});
      e1.push_back(ToyEmbedder::embed_text(texts.back().t1));
      e2.push_back(ToyEmbedder::embed_text(texts.back().t2));
      e3.push_back(ToyEmbedder::embed_text(texts.back().t3));
    }
    const GateConfig gate;
    std::vector<double> conf(n);
    const double s = best_ms(reps, [&] {
      for (int i = 0; i < n; ++i) conf[i] = score(texts[i], e1[i], e2[i], e3[i], gate).confidence;
    });
    const double p = best_ms(reps, [&] {
#pragma omp parallel for schedule(static)
      for (int i = 0; i < n; ++i) conf[i] = score(texts[i], e1[i], e2[i], e3[i], gate).confidence;
    });
    sink += static_cast<std::size_t>(conf[0] * 1000);
    line("gate scoring (20k)", s, p);
  }
  std::cout << "\n(checksum " << sink << ")\n";
  return 0;
}
