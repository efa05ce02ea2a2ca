#include "behavemark/uniform_codec.hpp"

#include <cmath>
#include <stdexcept>

namespace behavemark {

double expected_capacity(std::size_t n) {
  if (n < 1) throw std::invalid_argument("expected_capacity: bin size must be >= 1");
  if (n == 1) return 0.0;
  const BinCode code(n);
  return static_cast<double>(code.k) +
         static_cast<double>(code.surplus) / static_cast<double>(std::size_t{1} << code.k);
}

std::size_t shift_from_unit(double u, std::size_t n) {
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("shift_from_unit: u outside [0,1)");
  auto r = static_cast<std::size_t>(u * static_cast<double>(n));
  return r < n ? r : n - 1;
}

BinPlacement encode_with_shift(PayloadBits& payload, std::size_t n, std::size_t shift) {
  if (n < 1) throw std::invalid_argument("encode_with_shift: bin size must be >= 1");
  if (n == 1) return {0, BitString{}};
  if (shift >= n) throw std::invalid_argument("encode_with_shift: shift out of range");

  const BinCode code(n);
  const std::size_t short_count = (std::size_t{1} << code.k) - code.surplus;  // 2^k - t

  if (payload.remaining() < code.k) return {shift, BitString{}};

  BitString s;
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < code.k; ++i) {
    const std::uint8_t bit = payload.next();
    s.push_back(bit);
    x = (x << 1) | bit;
  }

  if (x < short_count) return {(x + shift) % n, std::move(s)};

  const std::uint8_t r = payload.remaining() >= 1 ? payload.next() : 0;
  s.push_back(r);
  const std::size_t j = (2 * (x - short_count) + short_count + shift + r) % n;
  return {j, std::move(s)};
}

BitString decode_with_shift(std::size_t index, std::size_t n, std::size_t shift) {
  if (n < 1) throw std::invalid_argument("decode_with_shift: bin size must be >= 1");
  if (n == 1) return BitString{};
  if (index >= n || shift >= n) throw std::invalid_argument("decode_with_shift: out of range");

  const BinCode code(n);
  const std::size_t short_count = (std::size_t{1} << code.k) - code.surplus;
  const std::size_t idx = (index + n - shift) % n;

  if (idx < short_count) return BitString::from_value(idx, code.k);

  const std::size_t u = idx - short_count;
  const std::size_t x = u / 2 + short_count;
  BitString s = BitString::from_value(x, code.k);
  s.push_back(static_cast<std::uint8_t>(u % 2));
  return s;
}

}  // namespace behavemark
