#ifndef BEHAVEMARK_UNIFORM_CODEC_HPP
#define BEHAVEMARK_UNIFORM_CODEC_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "behavemark/bits.hpp"

namespace behavemark {

// Codebook shape for a uniform bin of n elements: n = 2^k + surplus with
// 0 <= surplus < 2^k. 2^k - surplus indices carry k-bit codewords, the
// remaining 2*surplus carry (k+1)-bit codewords; together they form a
// prefix-free set of size n.
struct BinCode {
  std::size_t n;
  std::size_t k;
  std::size_t surplus;

  explicit BinCode(std::size_t bin_size)
      : n(bin_size),
        k(bin_size >= 1 ? static_cast<std::size_t>(std::bit_width(bin_size) - 1) : 0),
        surplus(bin_size - (std::size_t{1} << k)) {
    if (bin_size < 1) throw std::invalid_argument("BinCode: bin size must be >= 1");
  }
};

// Expected embedded bits per use of a size-n bin under pseudorandom payload
// bits: k + surplus/2^k (0 for n = 1). Always within [log2 n - 0.0861, log2 n].
double expected_capacity(std::size_t n);

// On-demand payload bit supplier. remaining() gates the embed-nothing branch;
// next() must only be called while remaining() > 0.
class PayloadBits {
 public:
  virtual ~PayloadBits() = default;
  virtual std::size_t remaining() const = 0;
  virtual std::uint8_t next() = 0;

  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();
};

// Reads off a fixed BitString, front to back.
class BitStringBits final : public PayloadBits {
 public:
  explicit BitStringBits(BitString bits) : bits_(std::move(bits)) {}
  std::size_t remaining() const override { return bits_.size() - pos_; }
  std::uint8_t next() override { return bits_[pos_++]; }

 private:
  BitString bits_;
  std::size_t pos_ = 0;
};

struct BinPlacement {
  std::size_t index;   // j in [0, n)
  BitString embedded;  // s: exactly the consumed payload prefix (may be empty)
};

// Cyclic-shift encode/decode with the shift R already fixed. The caller is
// responsible for drawing R only when n > 1 (both sides must consume the
// shift stream identically). When fewer than k payload bits remain, nothing
// is embedded and the index is R itself. When exactly k remain and the
// prefix selects a long codeword, the missing final bit defaults to 0 and is
// counted as embedded.
BinPlacement encode_with_shift(PayloadBits& payload, std::size_t n, std::size_t shift);
BitString decode_with_shift(std::size_t index, std::size_t n, std::size_t shift);

// floor(u * n) clamped to [0, n); u is a unit-interval draw.
std::size_t shift_from_unit(double u, std::size_t n);

// Stream-driven forms: draw one unit from the shift source and dispatch to
// the explicit-shift cores. For n = 1 no draw is consumed at all.
template <class UnitSource>
BinPlacement encode_in_bin(PayloadBits& payload, std::size_t n, UnitSource& shift_source) {
  if (n == 1) return {0, BitString{}};
  return encode_with_shift(payload, n, shift_from_unit(shift_source.next_unit(), n));
}

template <class UnitSource>
BitString decode_in_bin(std::size_t index, std::size_t n, UnitSource& shift_source) {
  if (n == 1) return BitString{};
  return decode_with_shift(index, n, shift_from_unit(shift_source.next_unit(), n));
}

// Convenience for fixed payloads (tests, worked examples).
template <class UnitSource>
BinPlacement encode_in_bin(const BitString& payload, std::size_t n, UnitSource& shift_source) {
  BitStringBits reader(payload);
  return encode_in_bin(reader, n, shift_source);
}

}  // namespace behavemark

#endif
