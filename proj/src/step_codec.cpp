#include "behavemark/step_codec.hpp"

#include <algorithm>
#include <cmath>

namespace behavemark {

namespace {

// Bridges StepRandomness::shift_unit into the codec's unit-source shape.
struct ShiftSource {
  StepRandomness& rnd;
  double next_unit() { return rnd.shift_unit(); }
};

}  // namespace

BitSource BitSource::raw(BitString framed_bits) {
  BitSource s;
  s.rateless_ = false;
  s.bits_ = std::move(framed_bits);
  return s;
}

BitSource BitSource::rateless(BitString payload_bits) {
  if (payload_bits.empty()) throw std::invalid_argument("BitSource: empty rateless payload");
  BitSource s;
  s.rateless_ = true;
  s.bits_ = std::move(payload_bits);
  return s;
}

std::size_t BitSource::remaining() const {
  if (rateless_) return PayloadBits::kUnbounded;
  return pointer_ < bits_.size() ? bits_.size() - pointer_ : 0;
}

std::uint8_t BitSource::next_raw_bit(StepRandomness& rnd) {
  if (rateless_) {
    const BitString row = rnd.coef_row(bits_.size());
    std::uint8_t dot = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) dot ^= (row[i] & bits_[i]);
    return dot;
  }
  if (pointer_ >= bits_.size()) throw std::logic_error("BitSource: raw source exhausted");
  return bits_[pointer_++];
}

std::size_t sample_bin(const BinDecomposition& decomp, double unit_draw) {
  if (!(unit_draw >= 0.0 && unit_draw < 1.0))
    throw std::invalid_argument("sample_bin: draw outside [0,1)");
  auto v = static_cast<std::int64_t>(unit_draw * static_cast<double>(kProbOne));
  v = std::min<std::int64_t>(v, kProbOne - 1);
  std::int64_t cum = 0;
  for (const auto& bin : decomp.bins) {
    cum += bin.weight_units;
    if (v < cum) return bin.size;
  }
  throw std::logic_error("sample_bin: weights do not cover the unit interval");
}

StepEncodeOutcome encode_step(const QuantizedDistribution& emitted, StepRandomness& rnd,
                              BitSource& source) {
  const BinDecomposition decomp = diff_recombine(canonical_order(emitted));
  const std::size_t bin_size = sample_bin(decomp, rnd.bin_unit());

  MaskedStepBits masked(source, rnd);
  ShiftSource shift{rnd};
  BinPlacement placement = encode_in_bin(masked, bin_size, shift);

  return {decomp.ordered_behaviors[placement.index], placement.embedded,
          placement.embedded.size()};
}

StepEncodeOutcome encode_step(const BehaviorDistribution& dist, const StepContext& ctx,
                              const MasterKey& master, BitSource& source) {
  KeyedStepRandomness rnd(derive_step_key(master, ctx));
  return encode_step(quantize(dist), rnd, source);
}

StepDecodeDetail decode_step_detail(const std::string& behavior,
                                    const QuantizedDistribution& emitted, StepRandomness& rnd) {
  const BinDecomposition decomp = diff_recombine(canonical_order(emitted));
  const std::size_t bin_size = sample_bin(decomp, rnd.bin_unit());

  const auto begin = decomp.ordered_behaviors.begin();
  const auto end = begin + static_cast<std::ptrdiff_t>(bin_size);
  const auto it = std::find(begin, end, behavior);
  if (it == end) throw BehaviorOutsideBin(behavior);

  ShiftSource shift{rnd};
  return {bin_size, decode_in_bin(static_cast<std::size_t>(it - begin), bin_size, shift)};
}

BitString decode_step(const std::string& behavior, const QuantizedDistribution& emitted,
                      StepRandomness& rnd) {
  return decode_step_detail(behavior, emitted, rnd).channel_bits;
}

BitString decode_step(const std::string& behavior, const BehaviorDistribution& dist,
                      const StepContext& ctx, const MasterKey& master) {
  KeyedStepRandomness rnd(derive_step_key(master, ctx));
  return decode_step(behavior, quantize(dist), rnd);
}

BitString recover_raw_bits(const BitString& channel_bits, StepRandomness& rnd) {
  return channel_bits.xor_with(rnd.pad_bits(channel_bits.size()));
}

}  // namespace behavemark
