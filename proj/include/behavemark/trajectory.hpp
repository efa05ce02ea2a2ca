#ifndef BEHAVEMARK_TRAJECTORY_HPP
#define BEHAVEMARK_TRAJECTORY_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "behavemark/keyed_randomness.hpp"
#include "behavemark/recombination.hpp"

namespace behavemark {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// Bins of size > 65536 would need codewords longer than 17 bits, which the
// raw-payload framing (17-bit granularity) does not support.
inline constexpr std::size_t kMaxCandidates = 65536;

// One logged decision: everything the verifier needs to re-derive the step
// key and replay the sampling. Candidates and probabilities are stored in
// the order the policy source emitted them; canonicalization is recomputed
// deterministically by every reader.
struct StepRecord {
  std::string trajectory_id;
  std::uint64_t step_index = 1;  // t >= 1
  std::vector<std::uint8_t> context_payload;
  std::vector<std::string> candidates;
  std::vector<std::int64_t> probs_micro;  // units of 1e-6, summing to exactly 1e6
  std::string chosen;

  StepContext context() const { return {trajectory_id, step_index, context_payload}; }
  QuantizedDistribution distribution() const { return {candidates, probs_micro}; }
  void validate() const;  // throws InvariantViolation
};

struct Trajectory {
  std::vector<StepRecord> records;  // step_index strictly increasing; gaps = erasures

  void validate() const;
};

// Newline-delimited records, one JSON object per line with fields
// trajectory_id, t, context_hex, candidates, probs_micro, chosen.
void write_log(const Trajectory& traj, std::ostream& sink);
void write_log_file(const Trajectory& traj, const std::string& path);
Trajectory read_log(std::istream& source);
Trajectory read_log_file(const std::string& path);

// Multi-trajectory logs: records grouped by trajectory_id, each group's
// step indices strictly increasing.
void write_log_file(const std::vector<Trajectory>& trajs, const std::string& path);
std::vector<Trajectory> read_multi_log(std::istream& source);
std::vector<Trajectory> read_multi_log_file(const std::string& path);

// Keeps each record independently with probability 1-p; deterministic under
// the seed.
Trajectory erase(const Trajectory& traj, double p, std::uint64_t seed);

// Keeps records with step_index <= prefix_len.
Trajectory truncate(const Trajectory& traj, std::uint64_t prefix_len);

}  // namespace behavemark

#endif
