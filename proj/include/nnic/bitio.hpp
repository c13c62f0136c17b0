// Copyright 2026 The nnic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nnic {

// Ordered sequence of bins. Every bin costs one bit in the rate model.
class BinString {
 public:
  BinString() = default;
  // Parses a string of '0'/'1' characters.
  static BinString from_string(std::string_view bits);

  void push(bool bit) { bits_.push_back(bit ? 1 : 0); }
  void append(const BinString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
  // Appends the low `count` bits of value, most significant first.
  void push_bits(std::uint32_t value, int count);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool starts_with(const BinString& prefix) const;
  std::string to_string() const;

  friend bool operator==(const BinString&, const BinString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Packs bits MSB-first into bytes.
class BitWriter {
 public:
  void put(bool bit);
  void put(const BinString& bins);
  void put_bits(std::uint64_t value, int count);
  std::size_t bit_count() const { return bit_count_; }
  // Final partial byte is zero-padded.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count);
  explicit BitReader(std::span<const std::uint8_t> bytes) : BitReader(bytes, bytes.size() * 8) {}
  explicit BitReader(const BinString& bins);
  BitReader(const BitReader&) = delete;
  BitReader& operator=(const BitReader&) = delete;

  // Throws nnic::Error("exhausted bits") past the end.
  bool get();
  std::uint64_t get_bits(int count);
  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bit_count_ - pos_; }

 private:
  std::vector<std::uint8_t> owned_;
  std::span<const std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace nnic
