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

#include "ctxstr/mask.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>

#include "ctxstr/error.hpp"

namespace ctxstr {

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (width < 1 || height < 1) {
    throw ContractError("mask dimensions must be positive, got " + std::to_string(width) +
                        "x" + std::to_string(height));
  }
  const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (data_.size() != expected) {
    throw ContractError("mask data length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(width) + "x" +
                        std::to_string(height));
  }
  if (std::any_of(data_.begin(), data_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw ContractError("mask labels must be 0 or 1");
  }
}

BinaryMask BinaryMask::zeros(int width, int height) {
  return BinaryMask(width, height,
                    std::vector<std::uint8_t>(static_cast<std::size_t>(width) *
                                              static_cast<std::size_t>(std::max(height, 0))));
}

std::size_t BinaryMask::foreground_count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  // Whitespace and '#' comments, as allowed between header tokens.
  void skip_separators() {
    while (!at_end()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (!at_end() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Unsigned decimal; at least one separator must precede it.
  long read_header_int(const char* field) {
    const std::size_t before = pos_;
    skip_separators();
    if (pos_ == before) {
      throw FormatError(std::string("expected whitespace before ") + field, pos_);
    }
    return read_digits(field);
  }

  long read_digits(const char* field) {
    if (at_end()) {
      throw FormatError(std::string("unexpected end of header reading ") + field, pos_);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw FormatError(std::string("expected decimal ") + field, pos_);
    }
    long value = 0;
    while (!at_end() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw FormatError(std::string(field) + " out of range", pos_);
      ++pos_;
    }
    return value;
  }

  std::uint8_t byte() { return bytes_[pos_++]; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

BinaryMask parse_pgm(std::span<const std::uint8_t> bytes, int threshold) {
  if (threshold < 0 || threshold > 255) {
    throw ContractError("threshold must be in [0,255], got " + std::to_string(threshold));
  }
  PgmReader in(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError("missing P2/P5 magic number", 0);
  }
  const bool binary = bytes[1] == '5';
  for (int i = 0; i < 2; ++i) in.byte();

  const long width = in.read_header_int("width");
  const long height = in.read_header_int("height");
  if (width < 1 || height < 1) {
    throw FormatError("image dimensions must be positive", in.pos());
  }
  const std::size_t maxval_at = in.pos();
  const long maxval = in.read_header_int("maxval");
  if (maxval != 255) {
    throw UnsupportedFormatError("only maxval 255 is supported, got " + std::to_string(maxval) +
                                 " (at byte offset " + std::to_string(maxval_at) + ")");
  }

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> data(count);
  const auto binarize = [threshold](long v) -> std::uint8_t { return v >= threshold ? 1 : 0; };

  if (binary) {
    if (in.at_end() || !std::isspace(bytes[in.pos()])) {
      throw FormatError("expected single whitespace after maxval", in.pos());
    }
    in.byte();
    if (in.remaining() < count) {
      throw TruncationError("P5 payload truncated: expected " + std::to_string(count) +
                            " bytes, found " + std::to_string(in.remaining()));
    }
    for (auto& px : data) px = binarize(in.byte());
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      in.skip_separators();
      if (in.at_end()) {
        throw TruncationError("P2 payload truncated: expected " + std::to_string(count) +
                              " samples, found " + std::to_string(i));
      }
      const std::size_t at = in.pos();
      const long v = in.read_digits("sample");
      if (v > maxval) throw FormatError("sample exceeds maxval", at);
      data[i] = binarize(v);
    }
  }
  return BinaryMask(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

BinaryMask read_mask(const std::filesystem::path& path, int threshold) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open mask file " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                        std::istreambuf_iterator<char>());
  return parse_pgm(bytes, threshold);
}

std::vector<std::uint8_t> encode_pgm(const BinaryMask& mask) {
  const std::string header = "P5\n" + std::to_string(mask.width()) + " " +
                             std::to_string(mask.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + mask.size());
  for (const auto v : mask.data()) out.push_back(v ? 255 : 0);
  return out;
}

void write_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  const auto bytes = encode_pgm(mask);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) throw IoError("write failed for " + path.string());
}

}  // namespace ctxstr
