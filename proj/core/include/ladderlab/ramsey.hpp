#pragma once

#include <cstdint>
#include <string>

#include "ladderlab/bound_value.hpp"

namespace ladderlab {

/// R(colors, 2, target): colouring the pairs of a set of at least this size
/// with `colors` colours always leaves a monochromatic subset of size
/// `target`.
struct RamseyQuery {
  BigInt colors = 2;
  BoundValue target = 2;
};

enum class RamseyMethod {
  Trivial,      // one colour, or target <= 2
  Recurrence,   // memoized R(n1..nk) <= 2 - k + sum_i R(.., ni - 1, ..)
  PowerBound,   // R <= k^(k (target - 1)) <= 2^(ceil(log2 k) k (target - 1))
};

struct RamseyBound {
  BoundValue value;
  RamseyMethod method = RamseyMethod::Trivial;
};

/// Largest recurrence state space (multisets of k targets in 2..m) that is
/// evaluated exactly.
inline constexpr std::uint64_t kRamseyStateBudget = 200'000;

/// Sound upper bound on the diagonal multicolour Ramsey number for pairs.
/// Monotone in both colours and target. Thread-safe.
RamseyBound ramsey_upper(const RamseyQuery& query);
inline BoundValue ramsey_upper(const BigInt& colors, const BoundValue& target) {
  return ramsey_upper(RamseyQuery{colors, target}).value;
}

std::string to_string(RamseyMethod m);

}  // namespace ladderlab
