#include "ladderlab/ramsey.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace ladderlab {

namespace {

constexpr std::uint64_t kMaxRecursionDepth = 4000;

// counts[v - 2] = number of colours whose target is v, for v in 2..m.
using State = std::vector<std::uint32_t>;

class RecurrenceMemo {
 public:
  BigInt value(const State& s) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    }
    BigInt colors = 0;
    for (auto c : s) colors += c;
    BigInt total = BigInt(2) - colors;
    for (std::size_t v = 0; v < s.size(); ++v) {
      if (s[v] == 0) continue;
      if (v == 0) {
        // target 2 drops to 1: base case R(.., 1, ..) = 1
        total += BigInt(s[v]);
        continue;
      }
      State t = s;
      --t[v];
      ++t[v - 1];
      total += BigInt(s[v]) * value(t);
    }
    std::lock_guard lock(mutex_);
    memo_.emplace(s, total);
    return total;
  }

 private:
  std::mutex mutex_;
  std::map<State, BigInt> memo_;
};

RecurrenceMemo& memo() {
  static RecurrenceMemo m;
  return m;
}

// C(k + m - 2, m - 2) <= budget, evaluated with early exit.
bool recurrence_fits(std::uint64_t k, std::uint64_t m) {
  if (k * (m - 1) > kMaxRecursionDepth) return false;
  const std::uint64_t n = k + m - 2;
  const std::uint64_t s = std::min(k, m - 2);
  BigInt c = 1;
  for (std::uint64_t i = 1; i <= s; ++i) {
    c = c * (n - s + i) / i;
    if (c > kRamseyStateBudget) return false;
  }
  return true;
}

}  // namespace

RamseyBound ramsey_upper(const RamseyQuery& q) {
  if (q.colors < 1) throw std::invalid_argument("ramsey_upper needs at least one colour");
  if (q.target < BoundValue(1)) throw std::invalid_argument("ramsey_upper needs target >= 1");
  if (q.target <= BoundValue(2)) return {q.target, RamseyMethod::Trivial};
  if (q.colors == 1) return {q.target, RamseyMethod::Trivial};

  const auto m = q.target.to_u64();
  if (m && q.colors <= kRamseyStateBudget &&
      recurrence_fits(static_cast<std::uint64_t>(q.colors), *m)) {
    State s(*m - 1, 0);
    s.back() = static_cast<std::uint32_t>(q.colors);
    return {BoundValue::exact(memo().value(s)), RamseyMethod::Recurrence};
  }

  // R <= multinomial(k (m-1); m-1, ..., m-1) <= k^(k (m-1)).
  const BigInt per_unit = BigInt(ceil_log2(q.colors)) * q.colors;
  const BoundValue exponent =
      q.target.is_exact() ? BoundValue::exact((q.target.top() - 1) * per_unit)
                          : q.target.times(per_unit);
  return {BoundValue::pow2(exponent), RamseyMethod::PowerBound};
}

std::string to_string(RamseyMethod m) {
  switch (m) {
    case RamseyMethod::Trivial: return "trivial";
    case RamseyMethod::Recurrence: return "recurrence";
    case RamseyMethod::PowerBound: return "power-bound";
  }
  return "unknown";
}

}  // namespace ladderlab
