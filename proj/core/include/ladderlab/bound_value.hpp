#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ladderlab {

using BigInt = boost::multiprecision::cpp_int;

/// A natural number used as an upper bound. Values below 2^kExactBits are
/// exact; larger ones are stored as a power tower 2^(2^(...(top))) of the
/// given height. Every operation that cannot be represented exactly rounds
/// up, so a BoundValue computed as an upper bound stays an upper bound.
///
/// Canonical form: height 0 holds the exact value; height h >= 1 has
/// kExactBits <= top < 2^kExactBits. Under that form values order
/// lexicographically by (height, top).
class BoundValue {
 public:
  static constexpr unsigned kExactBits = 1024;

  BoundValue() = default;
  BoundValue(std::uint64_t v) : top_(v) {}  // NOLINT: implicit by design of use sites
  static BoundValue exact(BigInt v);
  static BoundValue tower(std::size_t height, BigInt top);

  bool is_exact() const { return height_ == 0; }
  std::size_t height() const { return height_; }
  /// Exact value when height() == 0, otherwise the top exponent.
  const BigInt& top() const { return top_; }
  std::optional<std::uint64_t> to_u64() const;

  /// n + 1 (towers round up to the next representable value).
  BoundValue successor() const;
  /// n * c for c >= 1, rounded up for towers.
  BoundValue times(const BigInt& c) const;
  /// 2^n, rounded up for towers.
  static BoundValue pow2(const BoundValue& exponent);

  /// Decimal for exact values, "2^(2^(N))" for towers.
  std::string to_string() const;
  /// Inverse of to_string; throws std::invalid_argument.
  static BoundValue parse(std::string_view text);

  friend bool operator==(const BoundValue&, const BoundValue&) = default;
  friend std::strong_ordering operator<=>(const BoundValue& a, const BoundValue& b);

 private:
  void normalize();

  std::size_t height_ = 0;
  BigInt top_ = 0;
};

/// Smallest e with 2^e >= v, for v >= 1.
std::size_t ceil_log2(const BigInt& v);

}  // namespace ladderlab
