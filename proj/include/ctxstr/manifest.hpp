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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctxstr/replay.hpp"

namespace ctxstr {

struct ManifestEntry {
  std::string image_id;
  std::filesystem::path mask_path;  // resolved against the manifest's directory
  std::vector<std::string> ground_truth;
  std::optional<ReplayBundle> recorded;
  std::optional<std::filesystem::path> embeddings_path;
};

// One JSON object per line; blank lines are skipped. Relative paths resolve
// against the manifest's directory. Throws ValidationError with the line
// number on any bad record and on duplicate image ids.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

// Same, over in-memory text; relative paths resolve against `base_dir`.
std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir);

// Sidecar embeddings: a JSON object mapping embedding keys to number arrays.
std::map<std::string, Embedding> load_embeddings(const std::filesystem::path& path);

}  // namespace ctxstr
