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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxstr/lexsem.hpp"

namespace ctxstr {

// Frozen model outputs for one image, enough to run the pipeline offline.
//
// Embedding keys: "T1", "T2", "T3@<rank>" for the recorded texts, plus
// "text:<normalized text>" for any other string a run may need to embed
// (for instance a decoy description).
struct ReplayBundle {
  std::string t1;
  std::string t2;
  std::vector<std::string> t3_by_rank;
  std::optional<std::string> fallback_text;
  std::map<std::string, Embedding> embeddings;
};

}  // namespace ctxstr
