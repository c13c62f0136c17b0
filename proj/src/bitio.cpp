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

#include "nnic/bitio.hpp"

#include "nnic/error.hpp"

namespace nnic {

BinString BinString::from_string(std::string_view bits) {
  BinString b;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error("bin string may only contain 0 and 1");
    b.push(c == '1');
  }
  return b;
}

void BinString::push_bits(std::uint32_t value, int count) {
  for (int i = count - 1; i >= 0; --i) push(((value >> i) & 1u) != 0);
}

bool BinString::starts_with(const BinString& prefix) const {
  if (prefix.size() > size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (bits_[i] != prefix.bits_[i]) return false;
  }
  return true;
}

std::string BinString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

void BitWriter::put(bool bit) {
  if (bit_count_ % 8 == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bit_count_ % 8));
  ++bit_count_;
}

void BitWriter::put(const BinString& bins) {
  for (std::size_t i = 0; i < bins.size(); ++i) put(bins[i]);
}

void BitWriter::put_bits(std::uint64_t value, int count) {
  for (int i = count - 1; i >= 0; --i) put(((value >> i) & 1u) != 0);
}

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(bytes), bit_count_(bit_count) {
  if (bit_count > bytes.size() * 8) throw Error("bit count exceeds buffer");
}

BitReader::BitReader(const BinString& bins) {
  BitWriter w;
  w.put(bins);
  owned_ = w.bytes();
  bytes_ = owned_;
  bit_count_ = bins.size();
}

bool BitReader::get() {
  if (pos_ >= bit_count_) throw Error("exhausted bits");
  const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
  ++pos_;
  return bit;
}

std::uint64_t BitReader::get_bits(int count) {
  std::uint64_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | (get() ? 1u : 0u);
  return v;
}

}  // namespace nnic
