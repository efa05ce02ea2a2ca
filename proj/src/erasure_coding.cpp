#include "behavemark/erasure_coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace behavemark {

GF2Row pack_row(const BitString& bits) {
  GF2Row row((bits.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) row[i / 64] |= std::uint64_t{1} << (i % 64);
  return row;
}

std::uint8_t gf2_dot(const GF2Row& a, const GF2Row& b) {
  if (a.size() != b.size()) throw std::invalid_argument("gf2_dot: width mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
  return static_cast<std::uint8_t>(std::popcount(acc) & 1);
}

GF2System::GF2System(std::size_t unknowns)
    : unknowns_(unknowns), words_((unknowns + 63) / 64) {
  if (unknowns == 0) throw std::invalid_argument("GF2System: zero unknowns");
}

void GF2System::add_equation(const BitString& coefficients, std::uint8_t observation) {
  if (coefficients.size() != unknowns_)
    throw std::invalid_argument("GF2System: coefficient row has wrong length");
  add_equation(pack_row(coefficients), observation);
}

void GF2System::add_equation(GF2Row coefficients, std::uint8_t observation) {
  if (coefficients.size() != words_)
    throw std::invalid_argument("GF2System: packed row has wrong width");
  if (observation > 1) throw std::invalid_argument("GF2System: observation must be a bit");
  rows_.push_back(std::move(coefficients));
  rhs_.push_back(observation);
}

SolveResult GF2System::solve() const {
  std::vector<GF2Row> a = rows_;
  std::vector<std::uint8_t> y = rhs_;
  const std::size_t m = a.size();

  std::vector<std::size_t> pivot_row_of_col(unknowns_, m);  // m = no pivot
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns_ && rank < m; ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);

    std::size_t pivot = m;
    for (std::size_t r = rank; r < m; ++r)
      if (a[r][w] & mask) {
        pivot = r;
        break;
      }
    if (pivot == m) continue;

    std::swap(a[pivot], a[rank]);
    std::swap(y[pivot], y[rank]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || !(a[r][w] & mask)) continue;
      for (std::size_t k = 0; k < words_; ++k) a[r][k] ^= a[rank][k];
      y[r] ^= y[rank];
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }

  // Any zero row with a nonzero observation makes the system inconsistent.
  for (std::size_t r = rank; r < m; ++r)
    if (y[r]) return {SolveResult::Status::Inconsistent, rank, std::nullopt};

  if (rank < unknowns_) return {SolveResult::Status::Underdetermined, rank, std::nullopt};

  BitString solution;
  for (std::size_t col = 0; col < unknowns_; ++col)
    solution.push_back(y[pivot_row_of_col[col]]);
  return {SolveResult::Status::Unique, rank, std::move(solution)};
}

std::size_t GF2System::rank() const { return solve().rank; }

bool GF2System::consistency_check() const {
  return solve().status != SolveResult::Status::Inconsistent;
}

bool GF2System::satisfied_by(const BitString& candidate) const {
  if (candidate.size() != unknowns_)
    throw std::invalid_argument("GF2System: candidate has wrong length");
  const GF2Row packed = pack_row(candidate);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    if (gf2_dot(rows_[r], packed) != rhs_[r]) return false;
  return true;
}

BitString emit_equations(const PayloadMessage& m, const StepKey& key, std::size_t count) {
  RandomStream coef = open_stream(key, StreamLabel::Coef);
  const GF2Row packed = pack_row(m.bits);
  BitString out;
  for (std::size_t j = 0; j < count; ++j) {
    const GF2Row row = pack_row(coef.next_coefficient_row(m.length()));
    out.push_back(gf2_dot(row, packed));
  }
  return out;
}

double success_lower_bound(std::size_t received, std::size_t payload_length) {
  if (received < payload_length)
    throw std::domain_error("success_lower_bound: received < payload length");
  return 1.0 - std::exp2(-static_cast<double>(received - payload_length));
}

std::vector<BitString> repetition_encode(const PayloadMessage& m,
                                         const std::vector<std::size_t>& step_capacities) {
  std::vector<BitString> out;
  out.reserve(step_capacities.size());
  for (std::size_t step = 0; step < step_capacities.size(); ++step) {
    BitString s;
    s.push_back(m.bits[step % m.length()]);
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<BitString> repetition_blind_decode(
    const std::vector<std::pair<std::size_t, BitString>>& surviving,
    std::size_t payload_length) {
  if (payload_length == 0) throw std::invalid_argument("repetition_blind_decode: zero length");
  if (surviving.empty()) return std::nullopt;

  std::unordered_map<std::size_t, std::uint8_t> bit_at;
  std::size_t max_idx = 0;
  for (const auto& [idx, bits] : surviving) {
    if (bits.empty()) throw std::invalid_argument("repetition_blind_decode: empty step bits");
    bit_at[idx] = bits[0];
    max_idx = std::max(max_idx, idx);
  }

  // An aligned copy c occupies original steps [cL, cL+L). It is recoverable
  // blind iff all of them survived: surviving order preserves original order,
  // so a fully surviving copy is automatically a contiguous run of the
  // surviving stream.
  for (std::size_t start = 0; start + payload_length <= max_idx + 1; start += payload_length) {
    BitString candidate;
    for (std::size_t i = 0; i < payload_length; ++i) {
      const auto it = bit_at.find(start + i);
      if (it == bit_at.end()) break;
      candidate.push_back(it->second);
    }
    if (candidate.size() == payload_length) return candidate;
  }
  return std::nullopt;
}

}  // namespace behavemark
