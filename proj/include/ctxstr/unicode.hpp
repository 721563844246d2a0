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

#include <string>
#include <string_view>

// UTF-8 helpers. No locale is consulted.
namespace ctxstr::unicode {

// Decodes UTF-8. Ill-formed sequences decode to U+FFFD, one per bad byte.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

// The Unicode White_Space property.
bool is_white_space(char32_t c) noexcept;

// Simple (1:1) lowercase mapping from a generated table. Code points whose
// lowercase form is longer than one scalar map to themselves.
char32_t to_lower(char32_t c) noexcept;

}  // namespace ctxstr::unicode
