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

#include "ctxstr/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ctxstr/error.hpp"
#include "json.hpp"

namespace ctxstr {

using nlohmann::json;

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ValidationError("manifest line " + std::to_string(line) + ": " + msg);
}

const json& require(const json& obj, const char* field, std::size_t line) {
  const auto it = obj.find(field);
  if (it == obj.end()) fail(line, std::string("missing required field '") + field + "'");
  return *it;
}

std::string require_string(const json& v, const char* field, std::size_t line) {
  if (!v.is_string()) fail(line, std::string("field '") + field + "' must be a string");
  return v.get<std::string>();
}

Embedding embedding_from_json(const json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("embedding '" + key + "' must be an array of numbers");
  std::vector<double> values;
  values.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) {
      throw ValidationError("embedding '" + key + "' must be an array of numbers");
    }
    values.push_back(x.get<double>());
  }
  return Embedding(std::move(values));
}

std::map<std::string, Embedding> embeddings_from_json(const json& obj) {
  if (!obj.is_object()) throw ValidationError("embeddings must be an object");
  std::map<std::string, Embedding> out;
  for (const auto& [key, value] : obj.items()) out.emplace(key, embedding_from_json(value, key));
  return out;
}

ReplayBundle bundle_from_json(const json& obj, std::size_t line) {
  if (!obj.is_object()) fail(line, "'recorded' must be an object");
  ReplayBundle b;
  b.t1 = require_string(require(obj, "t1", line), "t1", line);
  b.t2 = require_string(require(obj, "t2", line), "t2", line);
  const auto& t3 = require(obj, "t3_by_rank", line);
  if (!t3.is_array()) fail(line, "'t3_by_rank' must be an array of strings");
  for (const auto& s : t3) b.t3_by_rank.push_back(require_string(s, "t3_by_rank", line));
  if (const auto it = obj.find("fallback_text"); it != obj.end() && !it->is_null()) {
    b.fallback_text = require_string(*it, "fallback_text", line);
  }
  if (const auto it = obj.find("embeddings"); it != obj.end() && !it->is_null()) {
    try {
      b.embeddings = embeddings_from_json(*it);
    } catch (const ValidationError& e) {
      fail(line, e.what());
    }
  }
  return b;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(const std::string& text,
                                          const std::filesystem::path& base_dir) {
  std::vector<ManifestEntry> entries;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      fail(line, std::string("not a JSON object: ") + e.what());
    }
    if (!obj.is_object()) fail(line, "record must be a JSON object");

    ManifestEntry e;
    e.image_id = require_string(require(obj, "image_id", line), "image_id", line);
    if (e.image_id.empty()) fail(line, "'image_id' must not be empty");
    e.mask_path = resolve(base_dir, require_string(require(obj, "mask_path", line), "mask_path", line));
    const auto& gt = require(obj, "ground_truth", line);
    if (!gt.is_array()) fail(line, "'ground_truth' must be an array of strings");
    for (const auto& s : gt) e.ground_truth.push_back(require_string(s, "ground_truth", line));
    if (const auto it = obj.find("recorded"); it != obj.end() && !it->is_null()) {
      e.recorded = bundle_from_json(*it, line);
    }
    if (const auto it = obj.find("embeddings_path"); it != obj.end() && !it->is_null()) {
      e.embeddings_path = resolve(base_dir, require_string(*it, "embeddings_path", line));
    }
    if (!seen.insert(e.image_id).second) {
      fail(line, "duplicate image_id '" + e.image_id + "'");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

std::map<std::string, Embedding> load_embeddings(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open embeddings file " + path.string());
  json obj;
  try {
    obj = json::parse(file);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  try {
    return embeddings_from_json(obj);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace ctxstr
