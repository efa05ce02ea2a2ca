#ifndef BEHAVEMARK_KEYED_RANDOMNESS_HPP
#define BEHAVEMARK_KEYED_RANDOMNESS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "behavemark/bits.hpp"

namespace behavemark {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);

// Shared 32-byte secret between embedder and verifier. Never written into
// trajectory logs; persisted only via the key file (64 hex chars, one line).
struct MasterKey {
  std::array<std::uint8_t, 32> bytes{};

  static MasterKey from_hex(const std::string& hex);
  std::string to_hex() const;

  friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

// Everything both sides can reconstruct about one decision step. The
// serialization is length-prefixed so distinct contexts never collide.
struct StepContext {
  std::string trajectory_id;
  std::uint64_t step_index = 1;  // >= 1
  std::vector<std::uint8_t> context_payload;

  std::vector<std::uint8_t> serialize() const;
};

struct StepKey {
  std::array<std::uint8_t, 32> bytes{};

  friend bool operator==(const StepKey&, const StepKey&) = default;
};

// step_key = SHA256(master || be64(|id|) || id || be64(t) || be64(|ctx|) || ctx)
StepKey derive_step_key(const MasterKey& master, const StepContext& ctx);

// One labeled stream per consumer so bin sampling, cyclic shifting, payload
// masking and coefficient generation never read each other's bits.
enum class StreamLabel : std::uint8_t {
  Bin = 'B',
  Shift = 'S',
  Pad = 'P',
  Coef = 'C',
};

// Deterministic bit stream: block_i = SHA256(seed || be64(i)) with
// seed = SHA256(step_key || label byte); bits are MSB-first per byte.
// Value type: copying captures the exact position, and a copy replays
// the identical suffix.
class RandomStream {
 public:
  RandomStream(const StepKey& key, StreamLabel label);

  // Raw seed constructor for stream uses outside the per-step protocol
  // (e.g. deterministic payload framing).
  explicit RandomStream(const std::array<std::uint8_t, 32>& seed);

  std::uint8_t next_bit();

  // Exactly `count` bits; consecutive calls return consecutive,
  // non-overlapping stream segments.
  BitString next_bits(std::size_t count);

  // u in [0,1): next 53 bits as an integer over 2^53.
  double next_unit();

  // The j-th call returns coefficient row j (L consecutive stream bits).
  BitString next_coefficient_row(std::size_t length) { return next_bits(length); }

 private:
  void refill();

  std::array<std::uint8_t, 32> seed_{};
  std::array<std::uint8_t, 32> block_{};
  std::uint64_t block_index_ = 0;
  std::size_t bit_pos_ = 256;  // forces refill on first use
};

RandomStream open_stream(const StepKey& key, StreamLabel label);

}  // namespace behavemark

#endif
