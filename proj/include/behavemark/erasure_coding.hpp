#ifndef BEHAVEMARK_ERASURE_CODING_HPP
#define BEHAVEMARK_ERASURE_CODING_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "behavemark/bits.hpp"
#include "behavemark/keyed_randomness.hpp"

namespace behavemark {

// The L-bit provenance payload m in F_2^L.
struct PayloadMessage {
  BitString bits;

  explicit PayloadMessage(BitString b) : bits(std::move(b)) {
    if (bits.empty()) throw std::invalid_argument("PayloadMessage: payload must be >= 1 bit");
  }
  std::size_t length() const { return bits.size(); }
};

// Word-packed GF(2) row, bit i at word i/64, lane i%64.
using GF2Row = std::vector<std::uint64_t>;

GF2Row pack_row(const BitString& bits);
std::uint8_t gf2_dot(const GF2Row& a, const GF2Row& b);

struct SolveResult {
  enum class Status { Unique, Underdetermined, Inconsistent };
  Status status;
  std::size_t rank = 0;
  std::optional<BitString> solution;  // present iff Unique
};

// Stacked coefficient rows A and observations y over F_2.
class GF2System {
 public:
  explicit GF2System(std::size_t unknowns);

  void add_equation(const BitString& coefficients, std::uint8_t observation);
  void add_equation(GF2Row coefficients, std::uint8_t observation);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rhs_.size(); }

  // Gauss-Jordan over F_2 on [A | y].
  SolveResult solve() const;
  std::size_t rank() const;
  // rank(A) == rank([A|y]): the verifier's acceptance rule.
  bool consistency_check() const;
  // Does A*candidate == y hold for every stored equation?
  bool satisfied_by(const BitString& candidate) const;

 private:
  std::size_t unknowns_;
  std::size_t words_;
  std::vector<GF2Row> rows_;
  std::vector<std::uint8_t> rhs_;
};

// First `count` equation bits for this step: y_j = <a_{t,j}, m> with a_{t,j}
// read off the step key's coefficient stream.
BitString emit_equations(const PayloadMessage& m, const StepKey& key, std::size_t count);

// Probability bound 1 - 2^{-(received - L)} for unique recovery from
// `received` pseudorandom equations. Requires received >= L.
double success_lower_bound(std::size_t received, std::size_t payload_length);

// Repetition baseline: payload bits sent cyclically, one bit per step, so
// steps cL .. cL+L-1 carry aligned copy c.
std::vector<BitString> repetition_encode(const PayloadMessage& m,
                                         const std::vector<std::size_t>& step_capacities);

// Blind decoding over the surviving (original-index, bits) records: succeeds
// iff every step of some aligned copy survived, i.e. an intact contiguous
// copy exists in the surviving stream. No sequence numbers are used to
// realign partial copies.
std::optional<BitString> repetition_blind_decode(
    const std::vector<std::pair<std::size_t, BitString>>& surviving, std::size_t payload_length);

}  // namespace behavemark

#endif
