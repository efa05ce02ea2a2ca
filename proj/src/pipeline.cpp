#include "behavemark/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace behavemark {

namespace {

constexpr std::size_t kFrameGranularity = 17;  // longest codeword for bins <= 2^16
constexpr std::size_t kFrameHeaderBits = 16;

std::unique_ptr<StepRandomness> make_randomness(const StepKey& key,
                                                const StepRandomnessFactory& factory) {
  if (factory) return factory(key);
  return std::make_unique<KeyedStepRandomness>(key);
}

std::vector<const StepRecord*> records_by_step(const Trajectory& traj) {
  std::vector<const StepRecord*> out;
  out.reserve(traj.records.size());
  for (const auto& rec : traj.records) out.push_back(&rec);
  std::sort(out.begin(), out.end(), [](const StepRecord* a, const StepRecord* b) {
    return a->step_index < b->step_index;
  });
  return out;
}

// Replays one trajectory's surviving steps and appends the recovered GF(2)
// equations to `sys`, updating the report's step/bit counters.
void collect_equations(const Trajectory& traj, const MasterKey& master,
                       const StepRandomnessFactory& factory, GF2System& sys,
                       VerificationReport& report) {
  const std::size_t L = sys.unknowns();
  for (const StepRecord* rec : records_by_step(traj)) {
    auto rnd = make_randomness(derive_step_key(master, rec->context()), factory);
    BitString channel;
    try {
      channel = decode_step(rec->chosen, rec->distribution(), *rnd);
    } catch (const BehaviorOutsideBin&) {
      ++report.desync_steps;
      continue;
    }
    const BitString observations = recover_raw_bits(channel, *rnd);
    for (std::size_t j = 0; j < observations.size(); ++j)
      sys.add_equation(rnd->coef_row(L), observations[j]);
    report.total_bits += observations.size();
  }
}

void fill_from_solution(VerificationReport& report, const SolveResult& solved) {
  report.rank = solved.rank;
  switch (solved.status) {
    case SolveResult::Status::Unique:
      report.status = VerificationReport::Status::Unique;
      report.payload = solved.solution;
      break;
    case SolveResult::Status::Underdetermined:
      report.status = VerificationReport::Status::Underdetermined;
      break;
    case SolveResult::Status::Inconsistent:
      report.status = VerificationReport::Status::Inconsistent;
      break;
  }
  if (report.total_bits >= report.payload_bits)
    report.success_bound = success_lower_bound(report.total_bits, report.payload_bits);
}

}  // namespace

std::size_t framed_length(std::size_t payload_bits) {
  const std::size_t body = kFrameHeaderBits + payload_bits;
  return kFrameGranularity * ((body + kFrameGranularity - 1) / kFrameGranularity);
}

BitString frame_raw_payload(const PayloadMessage& payload, const MasterKey& master) {
  if (payload.length() > 0xffff)
    throw std::invalid_argument("frame_raw_payload: payload longer than 65535 bits");

  BitString framed = BitString::from_value(payload.length(), kFrameHeaderBits);
  framed.append(payload.bits);

  std::vector<std::uint8_t> seed_input(master.bytes.begin(), master.bytes.end());
  seed_input.push_back('F');  // framing-pad domain
  RandomStream pad(sha256(seed_input));
  const std::size_t target = framed_length(payload.length());
  while (framed.size() < target) framed.push_back(pad.next_bit());
  return framed;
}

EmbedResult embed_trajectory(const std::vector<DistStep>& steps, const EmbedConfig& cfg,
                             const StepRandomnessFactory& randomness) {
  BitSource source = cfg.mode == EmbedMode::Raw
                         ? BitSource::raw(frame_raw_payload(cfg.payload, cfg.master))
                         : BitSource::rateless(cfg.payload.bits);

  EmbedResult result;
  result.trajectory.records.reserve(steps.size());
  for (const auto& [ctx, dist] : steps) {
    const QuantizedDistribution q = quantize(dist);
    auto rnd = make_randomness(derive_step_key(cfg.master, ctx), randomness);
    StepEncodeOutcome outcome = encode_step(q, *rnd, source);
    result.total_embedded_bits += outcome.consumed;
    result.trajectory.records.push_back({ctx.trajectory_id, ctx.step_index, ctx.context_payload,
                                         dist.behaviors, q.units, outcome.behavior});
  }
  result.trajectory.validate();
  return result;
}

VerificationReport decode_trajectory(const Trajectory& traj, const MasterKey& master,
                                     std::size_t payload_bits, EmbedMode mode,
                                     const StepRandomnessFactory& randomness) {
  if (payload_bits < 1) throw std::invalid_argument("decode: payload_bits must be >= 1");
  VerificationReport report;
  report.mode = mode;
  report.payload_bits = payload_bits;
  report.observed_steps = traj.records.size();

  if (mode == EmbedMode::Rateless) {
    GF2System sys(payload_bits);
    collect_equations(traj, master, randomness, sys, report);
    fill_from_solution(report, sys.solve());
    return report;
  }

  // RAW: rebuild the framed bit stream in step order, mirroring the
  // encoder's end-of-frame skip rule.
  const std::size_t frame_bits = framed_length(payload_bits);
  BitString recovered;
  for (const StepRecord* rec : records_by_step(traj)) {
    if (recovered.size() >= frame_bits) break;
    const std::size_t frame_left = frame_bits - recovered.size();
    auto rnd = make_randomness(derive_step_key(master, rec->context()), randomness);
    StepDecodeDetail step;
    try {
      step = decode_step_detail(rec->chosen, rec->distribution(), *rnd);
    } catch (const BehaviorOutsideBin&) {
      ++report.desync_steps;
      continue;
    }
    if (step.bin_size > 1) {
      const auto k = static_cast<std::size_t>(std::bit_width(step.bin_size) - 1);
      if (frame_left < k) continue;  // encoder embedded nothing here
    }
    recovered.append(recover_raw_bits(step.channel_bits, *rnd));
    report.total_bits += step.channel_bits.size();
  }

  if (recovered.size() >= kFrameHeaderBits + payload_bits &&
      recovered.prefix_value(kFrameHeaderBits) == payload_bits) {
    report.status = VerificationReport::Status::Unique;
    report.payload = recovered.slice(kFrameHeaderBits, payload_bits);
  } else if (recovered.size() >= kFrameHeaderBits &&
             recovered.prefix_value(kFrameHeaderBits) != payload_bits) {
    // Header disagrees with the declared length: wrong key or wrong L.
    report.status = VerificationReport::Status::Inconsistent;
  } else {
    report.status = VerificationReport::Status::Underdetermined;
  }
  return report;
}

VerificationReport global_decode(const std::vector<Trajectory>& trajs, const MasterKey& master,
                                 std::size_t payload_bits) {
  if (payload_bits < 1) throw std::invalid_argument("decode: payload_bits must be >= 1");
  VerificationReport report;
  report.mode = EmbedMode::Rateless;
  report.payload_bits = payload_bits;
  report.trajectories = trajs.size();

  GF2System sys(payload_bits);
  for (const auto& traj : trajs) {
    report.observed_steps += traj.records.size();
    collect_equations(traj, master, {}, sys, report);
  }
  fill_from_solution(report, sys.solve());
  return report;
}

ClaimResult verify_claim(const std::vector<Trajectory>& trajs, const MasterKey& master,
                         const PayloadMessage& claimed) {
  const std::size_t L = claimed.length();
  VerificationReport report;
  report.mode = EmbedMode::Rateless;
  report.payload_bits = L;
  report.trajectories = trajs.size();

  GF2System sys(L);
  for (const auto& traj : trajs) {
    report.observed_steps += traj.records.size();
    collect_equations(traj, master, {}, sys, report);
  }
  fill_from_solution(report, sys.solve());

  switch (report.status) {
    case VerificationReport::Status::Unique:
      return {*report.payload == claimed.bits ? ClaimStatus::Match : ClaimStatus::Reject,
              std::move(report)};
    case VerificationReport::Status::Underdetermined:
      return {sys.satisfied_by(claimed.bits) ? ClaimStatus::Partial : ClaimStatus::Reject,
              std::move(report)};
    case VerificationReport::Status::Inconsistent:
      return {ClaimStatus::Reject, std::move(report)};
  }
  throw std::logic_error("verify_claim: unreachable");
}

std::string VerificationReport::to_text() const {
  std::string out;
  auto line = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  line("mode", mode == EmbedMode::Rateless ? "rlnc" : "raw");
  line("trajectories", std::to_string(trajectories));
  line("observed_steps", std::to_string(observed_steps));
  line("desync_steps", std::to_string(desync_steps));
  line("total_bits", std::to_string(total_bits));
  line("payload_bits", std::to_string(payload_bits));
  if (mode == EmbedMode::Rateless) line("rank", std::to_string(rank));
  line("status", status == Status::Unique            ? "UNIQUE"
                 : status == Status::Underdetermined ? "UNDERDETERMINED"
                                                     : "INCONSISTENT");
  if (payload) {
    line("payload_bits_recovered", payload->to_string());
    line("payload_hex", bytes_to_hex(payload->to_bytes_msb()));
  }
  if (success_bound) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9f", *success_bound);
    line("success_bound", buf);
  }
  return out;
}

}  // namespace behavemark
