#ifndef BEHAVEMARK_PIPELINE_HPP
#define BEHAVEMARK_PIPELINE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "behavemark/erasure_coding.hpp"
#include "behavemark/step_codec.hpp"
#include "behavemark/trajectory.hpp"

namespace behavemark {

enum class EmbedMode { Raw, Rateless };

struct EmbedConfig {
  EmbedMode mode = EmbedMode::Rateless;
  PayloadMessage payload;
  MasterKey master;
};

// RAW payloads go on the wire framed: 16-bit big-endian length header,
// payload bits, then deterministic padding (from a master-key-derived
// stream) up to a multiple of 17 bits -- the longest possible codeword, so
// the decoder can mirror the encoder's end-of-payload handling exactly.
BitString frame_raw_payload(const PayloadMessage& payload, const MasterKey& master);
std::size_t framed_length(std::size_t payload_bits);

using DistStep = std::pair<StepContext, BehaviorDistribution>;

// Test/transcript hook: substitutes the keyed per-step randomness.
using StepRandomnessFactory = std::function<std::unique_ptr<StepRandomness>(const StepKey&)>;

struct EmbedResult {
  Trajectory trajectory;
  std::size_t total_embedded_bits = 0;
};

EmbedResult embed_trajectory(const std::vector<DistStep>& steps, const EmbedConfig& cfg,
                             const StepRandomnessFactory& randomness = {});

struct VerificationReport {
  enum class Status { Unique, Underdetermined, Inconsistent };

  EmbedMode mode = EmbedMode::Rateless;
  std::size_t trajectories = 1;
  std::size_t observed_steps = 0;
  std::size_t desync_steps = 0;  // behavior outside reproduced bin; skipped
  std::size_t total_bits = 0;    // R: channel bits over contributing steps
  std::size_t payload_bits = 0;  // L (verifier input)
  std::size_t rank = 0;          // rateless only
  Status status = Status::Underdetermined;
  std::optional<BitString> payload;      // present iff Unique
  std::optional<double> success_bound;   // 1 - 2^{-(R-L)} when R >= L

  std::string to_text() const;
};

// Replays every surviving record, pools the recovered GF(2) equations
// (rateless) or the framed bit stream (raw), and reports the outcome.
// Failure is a report status, never an exception.
VerificationReport decode_trajectory(const Trajectory& traj, const MasterKey& master,
                                     std::size_t payload_bits,
                                     EmbedMode mode = EmbedMode::Rateless,
                                     const StepRandomnessFactory& randomness = {});

// Pools equations across trajectories sharing payload and master key
// (per-trajectory contexts make the rows independent), then solves once.
VerificationReport global_decode(const std::vector<Trajectory>& trajs, const MasterKey& master,
                                 std::size_t payload_bits);

enum class ClaimStatus {
  Match,    // UNIQUE and recovered == claimed
  Partial,  // underdetermined, but claimed satisfies every equation
  Reject,
};

struct ClaimResult {
  ClaimStatus status;
  VerificationReport report;
};

// Auditor workflow: does this (set of) log(s) carry the claimed payload?
ClaimResult verify_claim(const std::vector<Trajectory>& trajs, const MasterKey& master,
                         const PayloadMessage& claimed);

}  // namespace behavemark

#endif
