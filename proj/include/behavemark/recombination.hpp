#ifndef BEHAVEMARK_RECOMBINATION_HPP
#define BEHAVEMARK_RECOMBINATION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace behavemark {

// One probability unit = kProbPrecision. After quantization every identity in
// this module is exact integer arithmetic, so encoder and decoder can never
// disagree by a rounding tie.
inline constexpr double kProbPrecision = 1e-6;
inline constexpr std::int64_t kProbOne = 1'000'000;

struct AllZeroDistribution : std::runtime_error {
  AllZeroDistribution() : std::runtime_error("quantize: all probabilities rounded to zero") {}
};

// Candidate behaviors with raw (unquantized) probabilities, as elicited from
// the policy source. Identifiers must be pairwise distinct.
struct BehaviorDistribution {
  std::vector<std::string> behaviors;
  std::vector<double> probs;

  void validate() const;  // throws std::invalid_argument on violation
};

// Probabilities held as integers in units of kProbPrecision, summing exactly
// to kProbOne.
struct QuantizedDistribution {
  std::vector<std::string> behaviors;
  std::vector<std::int64_t> units;

  std::size_t size() const { return behaviors.size(); }
  void validate() const;
};

// Mixture of uniform bins over the canonically ordered behaviors: bin k
// covers the top-k behaviors and carries weight k*(p_k - p_{k+1}). Only
// positive-weight bins are kept; sizes are strictly increasing.
struct BinDecomposition {
  struct Bin {
    std::size_t size;          // k: number of top-ranked behaviors in the bin
    std::int64_t weight_units;  // q_k in probability units, > 0
  };

  std::vector<std::string> ordered_behaviors;
  std::vector<Bin> bins;
};

// Rounds each probability to integer units and pushes the rounding residual
// onto the entry with the largest raw probability (first such index on ties)
// so the quantized mass is exactly one.
QuantizedDistribution quantize(const BehaviorDistribution& dist,
                               double precision = kProbPrecision);

// Stable sort by units, non-increasing; ties keep the incoming order.
QuantizedDistribution canonical_order(const QuantizedDistribution& dist);

// First-order-difference decomposition of a canonically ordered distribution.
BinDecomposition diff_recombine(const QuantizedDistribution& ordered);

// Probability mass the decomposition assigns to the rank-i behavior
// (1-based), in units. Equal to p_i exactly; used as the preservation oracle.
std::int64_t marginal_of(const BinDecomposition& decomp, std::size_t rank);

}  // namespace behavemark

#endif
