#ifndef BEHAVEMARK_STEP_CODEC_HPP
#define BEHAVEMARK_STEP_CODEC_HPP

#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "behavemark/bits.hpp"
#include "behavemark/keyed_randomness.hpp"
#include "behavemark/recombination.hpp"
#include "behavemark/uniform_codec.hpp"

namespace behavemark {

// Raised by the decoder when the observed behavior is not inside the
// reproduced bin: wrong key, tampered record, or desynchronized context.
// Robust decoding treats such steps as erasures.
struct BehaviorOutsideBin : std::runtime_error {
  explicit BehaviorOutsideBin(const std::string& behavior)
      : std::runtime_error("behavior '" + behavior + "' outside reproduced bin") {}
};

// Per-step randomness needs of the codec, in the fixed draw order: one bin
// unit, one shift unit (skipped for singleton bins), pad bits, coefficient
// rows. Keyed in production; scripted for worked-example transcripts.
class StepRandomness {
 public:
  virtual ~StepRandomness() = default;
  virtual double bin_unit() = 0;
  virtual double shift_unit() = 0;
  virtual std::uint8_t pad_bit() = 0;
  virtual BitString coef_row(std::size_t length) = 0;

  BitString pad_bits(std::size_t count) {
    BitString out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pad_bit());
    return out;
  }
};

class KeyedStepRandomness final : public StepRandomness {
 public:
  explicit KeyedStepRandomness(const StepKey& key)
      : bin_(key, StreamLabel::Bin),
        shift_(key, StreamLabel::Shift),
        pad_(key, StreamLabel::Pad),
        coef_(key, StreamLabel::Coef) {}

  double bin_unit() override { return bin_.next_unit(); }
  double shift_unit() override { return shift_.next_unit(); }
  std::uint8_t pad_bit() override { return pad_.next_bit(); }
  BitString coef_row(std::size_t length) override { return coef_.next_coefficient_row(length); }

 private:
  RandomStream bin_, shift_, pad_, coef_;
};

// Replays injected draws; throws when a script runs dry.
class ScriptedStepRandomness final : public StepRandomness {
 public:
  ScriptedStepRandomness(std::deque<double> bin_units, std::deque<double> shift_units,
                         BitString pad, std::deque<BitString> coef_rows = {})
      : bin_units_(std::move(bin_units)),
        shift_units_(std::move(shift_units)),
        coef_rows_(std::move(coef_rows)) {
    for (std::size_t i = 0; i < pad.size(); ++i) pad_.push_back(pad[i]);
  }

  double bin_unit() override { return pop(bin_units_, "bin unit"); }
  double shift_unit() override { return pop(shift_units_, "shift unit"); }
  std::uint8_t pad_bit() override { return pop(pad_, "pad bit"); }
  BitString coef_row(std::size_t) override { return pop(coef_rows_, "coef row"); }

 private:
  template <class T>
  static T pop(std::deque<T>& q, const char* what) {
    if (q.empty()) throw std::runtime_error(std::string("scripted randomness exhausted: ") + what);
    T v = q.front();
    q.pop_front();
    return v;
  }

  std::deque<double> bin_units_;
  std::deque<double> shift_units_;
  std::deque<std::uint8_t> pad_;
  std::deque<BitString> coef_rows_;
};

// Where payload bits come from. RAW walks a finite (already framed) bit
// string with a pointer and never rereads; RATELESS derives each bit as a
// fresh GF(2) equation <a_{t,j}, m> against the current step's coefficient
// stream, so it never runs out.
class BitSource {
 public:
  static BitSource raw(BitString framed_bits);
  static BitSource rateless(BitString payload_bits);

  bool is_rateless() const { return rateless_; }
  std::size_t remaining() const;
  // RAW only: bits consumed so far (the pointer).
  std::size_t position() const { return pointer_; }

  friend class MaskedStepBits;

 private:
  BitSource() = default;
  std::uint8_t next_raw_bit(StepRandomness& rnd);

  bool rateless_ = false;
  BitString bits_;           // framed payload (RAW) or the L-bit message (RATELESS)
  std::size_t pointer_ = 0;  // RAW read position
};

// The bit stream the cyclic-shift codec actually sees: source bits XORed
// with the per-step pad, produced lazily so exactly |s_t| pad bits (and, in
// rateless mode, coefficient rows) are consumed per step.
class MaskedStepBits final : public PayloadBits {
 public:
  MaskedStepBits(BitSource& source, StepRandomness& rnd) : source_(source), rnd_(rnd) {}
  std::size_t remaining() const override { return source_.remaining(); }
  std::uint8_t next() override { return source_.next_raw_bit(rnd_) ^ rnd_.pad_bit(); }

 private:
  BitSource& source_;
  StepRandomness& rnd_;
};

struct StepEncodeOutcome {
  std::string behavior;  // selected candidate
  BitString embedded;    // s_t: channel bits as placed (post-mask)
  std::size_t consumed;  // bits taken from the payload source, == |embedded|
};

// One watermarked selection: recombine, sample a bin from the BIN stream,
// embed masked payload bits within it, return the chosen behavior. The
// marginal law of the choice equals the quantized distribution.
StepEncodeOutcome encode_step(const QuantizedDistribution& emitted, StepRandomness& rnd,
                              BitSource& source);
StepEncodeOutcome encode_step(const BehaviorDistribution& dist, const StepContext& ctx,
                              const MasterKey& master, BitSource& source);

// Inverts one step: reproduces the bin and shift, returns the channel bits
// s_t. Unmasking is separate (recover_raw_bits) so rateless equation bits can
// be extracted by the pipeline. Throws BehaviorOutsideBin on desync.
BitString decode_step(const std::string& behavior, const QuantizedDistribution& emitted,
                      StepRandomness& rnd);
BitString decode_step(const std::string& behavior, const BehaviorDistribution& dist,
                      const StepContext& ctx, const MasterKey& master);

// Decode variant exposing the reproduced bin size (the pipeline's raw-mode
// end-of-frame rule needs it).
struct StepDecodeDetail {
  std::size_t bin_size;
  BitString channel_bits;
};
StepDecodeDetail decode_step_detail(const std::string& behavior,
                                    const QuantizedDistribution& emitted, StepRandomness& rnd);

// s_t XOR pad -> the raw bits the source supplied at encode time.
BitString recover_raw_bits(const BitString& channel_bits, StepRandomness& rnd);

// Bin index sampled by inverse CDF over bins in increasing size order,
// using integer thresholds in probability units.
std::size_t sample_bin(const BinDecomposition& decomp, double unit_draw);

}  // namespace behavemark

#endif
