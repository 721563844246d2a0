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

#include <chrono>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ctxstr/adapters.hpp"
#include "ctxstr/error.hpp"
#include "httplib.h"
#include "json.hpp"

namespace ctxstr {

using nlohmann::json;

namespace {

json parse_reply(const std::string& route, const std::string& body) {
  try {
    auto j = json::parse(body);
    if (!j.is_object()) throw TransportError(route + ": reply is not a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw TransportError(route + ": malformed reply: " + e.what());
  }
}

std::string string_field(const json& j, const std::string& route, const char* field) {
  const auto it = j.find(field);
  if (it == j.end() || !it->is_string()) {
    throw TransportError(route + ": reply lacks string field '" + field + "'");
  }
  return it->get<std::string>();
}

void attach_image(json& body, const SourceImageRef& image) {
  body["image_id"] = image.image_id;
  if (!image.path) return;
  std::ifstream file(*image.path, std::ios::binary);
  if (!file) return;
  const std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  body["image_b64"] = base64_encode(bytes);
}

std::size_t count_tokens(const std::string& text) {
  std::istringstream in(text);
  return static_cast<std::size_t>(
      std::distance(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()));
}

}  // namespace

RemoteBackend::RemoteBackend(RemoteEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  if (endpoint_.timeout_ms <= 0) throw ValidationError("timeout must be positive");
  if (!endpoint_.base_url.starts_with("http://") && !endpoint_.base_url.starts_with("https://")) {
    throw ValidationError("endpoint must be an http:// URL, got '" + endpoint_.base_url + "'");
  }
  while (endpoint_.base_url.ends_with('/')) endpoint_.base_url.pop_back();
}

std::string RemoteBackend::post(const std::string& route, const std::string& body) {
  // One client per request keeps concurrent calls independent.
  httplib::Client client(endpoint_.base_url);
  const auto timeout = std::chrono::milliseconds(endpoint_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  auto res = route == "/info" ? client.Get(route) : client.Post(route, body, "application/json");
  if (!res) {
    throw TransportError(endpoint_.base_url + route + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError(endpoint_.base_url + route + ": HTTP " + std::to_string(res->status) +
                         (res->body.empty() ? "" : " " + res->body));
  }
  return res->body;
}

RemoteInfo RemoteBackend::info() {
  const auto j = parse_reply("/info", post("/info", ""));
  const auto dim = j.find("dim");
  if (dim == j.end() || !dim->is_number_unsigned() || dim->get<std::size_t>() == 0) {
    throw TransportError("/info: reply lacks a positive 'dim'");
  }
  return {dim->get<std::size_t>(), string_field(j, "/info", "model_name")};
}

std::string RemoteBackend::recognize(const SourceImageRef& image,
                                     const std::optional<TextBlock>& region) {
  json body;
  attach_image(body, image);
  if (region) {
    body["bbox"] = {{"x_min", region->bbox.x_min},
                    {"y_min", region->bbox.y_min},
                    {"x_max", region->bbox.x_max},
                    {"y_max", region->bbox.y_max}};
  }
  return string_field(parse_reply("/recognize", post("/recognize", body.dump())), "/recognize",
                      "text");
}

Caption RemoteBackend::caption(const SourceImageRef& image, DescriptionLength length) {
  const auto bounds = length_bounds(length);
  json body;
  attach_image(body, image);
  body["max_length"] = bounds.max_length;
  body["min_length"] = bounds.min_length;
  Caption c{string_field(parse_reply("/caption", post("/caption", body.dump())), "/caption",
                         "text"),
            std::nullopt};
  const auto tokens = count_tokens(c.text);
  if (tokens < static_cast<std::size_t>(bounds.min_length) ||
      tokens > static_cast<std::size_t>(bounds.max_length)) {
    c.warning = "caption has " + std::to_string(tokens) + " tokens, outside [" +
                std::to_string(bounds.min_length) + ", " + std::to_string(bounds.max_length) +
                "] for the " + std::string(to_string(length)) + " preset";
  }
  return c;
}

Embedding RemoteBackend::embed(const NormalizedText& text, const EmbedKey&) {
  const auto j = parse_reply("/embed", post("/embed", json{{"text", text.str()}}.dump()));
  const auto it = j.find("vector");
  if (it == j.end() || !it->is_array() || it->empty()) {
    throw TransportError("/embed: reply lacks a non-empty 'vector'");
  }
  std::vector<double> v;
  v.reserve(it->size());
  for (const auto& x : *it) {
    if (!x.is_number()) throw TransportError("/embed: 'vector' must hold numbers");
    v.push_back(x.get<double>());
  }
  try {
    return Embedding(std::move(v));
  } catch (const ContractError& e) {
    throw TransportError(std::string("/embed: ") + e.what());
  }
}

std::vector<std::string> RemoteBackend::fallback_recognize(const SourceImageRef& image) {
  json body;
  attach_image(body, image);
  const auto j = parse_reply("/fallback", post("/fallback", body.dump()));
  const auto it = j.find("texts");
  if (it == j.end() || !it->is_array()) throw TransportError("/fallback: reply lacks 'texts'");
  std::vector<std::string> texts;
  for (const auto& t : *it) {
    if (!t.is_string()) throw TransportError("/fallback: 'texts' must hold strings");
    texts.push_back(t.get<std::string>());
  }
  return texts;
}

AdapterSet make_remote_adapters(const RemoteEndpoint& endpoint) {
  auto remote = std::make_shared<RemoteBackend>(endpoint);
  return {std::make_shared<MaskFileSegmenter>(), remote, remote, remote, remote};
}

}  // namespace ctxstr
