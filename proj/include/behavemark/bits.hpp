#ifndef BEHAVEMARK_BITS_HPP
#define BEHAVEMARK_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace behavemark {

// Ordered sequence of bits. Unpacked (one byte per bit) -- payloads and
// per-step substrings are short, so clarity wins over packing here.
// GF(2) linear algebra uses its own word-packed rows (see erasure_coding).
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
      if (b > 1) throw std::invalid_argument("BitString: bit value out of {0,1}");
  }

  // Parses "0101..."; anything but '0'/'1' is rejected.
  static BitString from_string(const std::string& s) {
    BitString out;
    out.bits_.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("BitString: expected '0' or '1'");
      out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
  }

  // First `count` bits of `bytes`, MSB-first within each byte.
  static BitString from_bytes_msb(std::span<const std::uint8_t> bytes, std::size_t count) {
    if (count > bytes.size() * 8) throw std::invalid_argument("BitString: not enough bytes");
    BitString out;
    out.bits_.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      out.bits_.push_back((bytes[i / 8] >> (7 - i % 8)) & 1u);
    return out;
  }

  // Inverse of from_bytes_msb; trailing bits of the last byte are zero.
  std::vector<std::uint8_t> to_bytes_msb() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }

  void push_back(std::uint8_t bit) {
    if (bit > 1) throw std::invalid_argument("BitString: bit value out of {0,1}");
    bits_.push_back(bit);
  }
  void append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
  }

  BitString slice(std::size_t pos, std::size_t len) const {
    if (pos + len > bits_.size()) throw std::out_of_range("BitString::slice");
    BitString out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                     bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
    return out;
  }

  // Bitwise XOR with a mask of the same length.
  BitString xor_with(const BitString& mask) const {
    if (mask.size() != size()) throw std::invalid_argument("BitString: xor length mismatch");
    BitString out = *this;
    for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] ^= mask.bits_[i];
    return out;
  }

  // Leading `width` bits interpreted as a big-endian integer.
  std::uint64_t prefix_value(std::size_t width) const {
    if (width > 63 || width > size()) throw std::invalid_argument("BitString: bad prefix width");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 1) | bits_[i];
    return v;
  }

  // `width` bits of `value`, MSB first.
  static BitString from_value(std::uint64_t value, std::size_t width) {
    if (width > 63) throw std::invalid_argument("BitString: bad width");
    BitString out;
    out.bits_.reserve(width);
    for (std::size_t i = 0; i < width; ++i)
      out.bits_.push_back((value >> (width - 1 - i)) & 1u);
    return out;
  }

  const std::vector<std::uint8_t>& raw() const { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::string bytes_to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> hex_to_bytes(const std::string& hex);

}  // namespace behavemark

#endif
