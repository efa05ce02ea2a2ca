#include "behavemark/recombination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace behavemark {

void BehaviorDistribution::validate() const {
  if (behaviors.empty()) throw std::invalid_argument("distribution: no behaviors");
  if (behaviors.size() != probs.size())
    throw std::invalid_argument("distribution: behaviors/probs length mismatch");
  std::unordered_set<std::string> seen;
  double sum = 0.0;
  for (std::size_t i = 0; i < behaviors.size(); ++i) {
    if (!seen.insert(behaviors[i]).second)
      throw std::invalid_argument("distribution: duplicate behavior id '" + behaviors[i] + "'");
    if (!(probs[i] >= 0.0)) throw std::invalid_argument("distribution: negative probability");
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("distribution: probabilities sum to " + std::to_string(sum));
}

void QuantizedDistribution::validate() const {
  if (behaviors.empty()) throw std::invalid_argument("distribution: no behaviors");
  if (behaviors.size() != units.size())
    throw std::invalid_argument("distribution: behaviors/units length mismatch");
  std::unordered_set<std::string> seen;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < behaviors.size(); ++i) {
    if (!seen.insert(behaviors[i]).second)
      throw std::invalid_argument("distribution: duplicate behavior id '" + behaviors[i] + "'");
    if (units[i] < 0) throw std::invalid_argument("distribution: negative units");
    sum += units[i];
  }
  if (sum != kProbOne)
    throw std::invalid_argument("distribution: units sum to " + std::to_string(sum));
}

QuantizedDistribution quantize(const BehaviorDistribution& dist, double precision) {
  if (dist.behaviors.empty()) throw std::invalid_argument("quantize: no behaviors");
  if (dist.behaviors.size() != dist.probs.size())
    throw std::invalid_argument("quantize: behaviors/probs length mismatch");
  const auto scale = static_cast<std::int64_t>(std::llround(1.0 / precision));
  if (scale != kProbOne)
    throw std::invalid_argument("quantize: unsupported precision (log format is fixed at 1e-6)");

  QuantizedDistribution out;
  out.behaviors = dist.behaviors;
  out.units.resize(dist.probs.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) {
    out.units[i] = std::llround(dist.probs[i] * static_cast<double>(scale));
    total += out.units[i];
  }
  if (total == 0) throw AllZeroDistribution();

  // Residual mass from rounding goes to the largest raw entry.
  std::size_t largest = 0;
  for (std::size_t i = 1; i < dist.probs.size(); ++i)
    if (dist.probs[i] > dist.probs[largest]) largest = i;
  out.units[largest] += kProbOne - total;
  if (out.units[largest] < 0)
    throw std::invalid_argument("quantize: residual made largest entry negative");
  return out;
}

QuantizedDistribution canonical_order(const QuantizedDistribution& dist) {
  std::vector<std::size_t> idx(dist.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return dist.units[a] > dist.units[b]; });
  QuantizedDistribution out;
  out.behaviors.reserve(dist.size());
  out.units.reserve(dist.size());
  for (auto i : idx) {
    out.behaviors.push_back(dist.behaviors[i]);
    out.units.push_back(dist.units[i]);
  }
  return out;
}

BinDecomposition diff_recombine(const QuantizedDistribution& ordered) {
  const std::size_t n = ordered.size();
  for (std::size_t i = 1; i < n; ++i)
    if (ordered.units[i - 1] < ordered.units[i])
      throw std::invalid_argument("diff_recombine: input not canonically ordered");

  BinDecomposition out;
  out.ordered_behaviors = ordered.behaviors;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::int64_t next = (k < n) ? ordered.units[k] : 0;
    const std::int64_t diff = ordered.units[k - 1] - next;
    if (diff > 0)
      out.bins.push_back({k, static_cast<std::int64_t>(k) * diff});
  }
  return out;
}

std::int64_t marginal_of(const BinDecomposition& decomp, std::size_t rank) {
  if (rank < 1 || rank > decomp.ordered_behaviors.size())
    throw std::invalid_argument("marginal_of: rank out of range");
  std::int64_t mass = 0;
  for (const auto& bin : decomp.bins)
    if (bin.size >= rank) mass += bin.weight_units / static_cast<std::int64_t>(bin.size);
  return mass;
}

}  // namespace behavemark
