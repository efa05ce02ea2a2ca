#include "behavemark/keyed_randomness.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace behavemark {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != 32)
    throw std::runtime_error("sha256: digest failed");
  return out;
}

namespace {

void append_be64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    buf.push_back(static_cast<std::uint8_t>((v >> shift) & 0xffu));
}

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string bytes_to_hex(std::span<const std::uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> hex_to_bytes(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex: odd length");
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_nibble(hex[2 * i]);
    int lo = hex_nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("hex: invalid character");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

MasterKey MasterKey::from_hex(const std::string& hex) {
  auto bytes = hex_to_bytes(hex);
  if (bytes.size() != 32) throw std::invalid_argument("MasterKey: expected 64 hex characters");
  MasterKey k;
  std::memcpy(k.bytes.data(), bytes.data(), 32);
  return k;
}

std::string MasterKey::to_hex() const { return bytes_to_hex(bytes); }

std::vector<std::uint8_t> StepContext::serialize() const {
  if (step_index < 1) throw std::invalid_argument("StepContext: step_index must be >= 1");
  std::vector<std::uint8_t> buf;
  buf.reserve(24 + trajectory_id.size() + context_payload.size());
  append_be64(buf, trajectory_id.size());
  buf.insert(buf.end(), trajectory_id.begin(), trajectory_id.end());
  append_be64(buf, step_index);
  append_be64(buf, context_payload.size());
  buf.insert(buf.end(), context_payload.begin(), context_payload.end());
  return buf;
}

StepKey derive_step_key(const MasterKey& master, const StepContext& ctx) {
  std::vector<std::uint8_t> buf(master.bytes.begin(), master.bytes.end());
  auto ser = ctx.serialize();
  buf.insert(buf.end(), ser.begin(), ser.end());
  StepKey key;
  key.bytes = sha256(buf);
  return key;
}

RandomStream::RandomStream(const StepKey& key, StreamLabel label) {
  std::vector<std::uint8_t> buf(key.bytes.begin(), key.bytes.end());
  buf.push_back(static_cast<std::uint8_t>(label));
  seed_ = sha256(buf);
}

RandomStream::RandomStream(const std::array<std::uint8_t, 32>& seed) : seed_(seed) {}

void RandomStream::refill() {
  std::vector<std::uint8_t> buf(seed_.begin(), seed_.end());
  for (int shift = 56; shift >= 0; shift -= 8)
    buf.push_back(static_cast<std::uint8_t>((block_index_ >> shift) & 0xffu));
  block_ = sha256(buf);
  ++block_index_;
  bit_pos_ = 0;
}

std::uint8_t RandomStream::next_bit() {
  if (bit_pos_ >= 256) refill();
  std::uint8_t byte = block_[bit_pos_ / 8];
  std::uint8_t bit = (byte >> (7 - bit_pos_ % 8)) & 1u;
  ++bit_pos_;
  return bit;
}

BitString RandomStream::next_bits(std::size_t count) {
  BitString out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(next_bit());
  return out;
}

double RandomStream::next_unit() {
  std::uint64_t v = 0;
  for (int i = 0; i < 53; ++i) v = (v << 1) | next_bit();
  return static_cast<double>(v) / 9007199254740992.0;  // 2^53
}

RandomStream open_stream(const StepKey& key, StreamLabel label) {
  return RandomStream(key, label);
}

}  // namespace behavemark
