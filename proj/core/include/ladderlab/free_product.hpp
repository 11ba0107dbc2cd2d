#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ladderlab/group.hpp"

namespace ladderlab {

/// A non-identity element of one factor, as it appears in a normal form.
struct Letter {
  FactorId factor;
  std::uint32_t elem = 0;
  auto operator<=>(const Letter&) const = default;
};

/// Normal form of an element of a free product: adjacent letters lie in
/// distinct factors and no letter is an identity. The empty word is the
/// identity. Only FreeProduct constructs non-empty values.
class ReducedWord {
 public:
  ReducedWord() = default;

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  auto operator<=>(const ReducedWord&) const = default;

 private:
  friend class FreeProduct;
  explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

inline std::size_t length(const ReducedWord& u) { return u.length(); }

/// All reduced words of length <= radius, shortest first and
/// lexicographic (by factor, then element) within a length.
struct Ball {
  std::size_t radius = 0;
  std::vector<ReducedWord> members;
  std::size_t size() const { return members.size(); }
};

inline constexpr std::uint64_t kDefaultBallCap = 1'000'000;

class FreeProduct {
 public:
  /// Factors are re-labelled with their position in `factors`.
  explicit FreeProduct(std::vector<FactorGroup> factors);

  std::size_t num_factors() const { return factors_.size(); }
  const FactorGroup& factor(FactorId id) const;
  const std::vector<FactorGroup>& factors() const { return factors_; }
  bool all_finite() const;

  /// Normal form of a raw product of factor elements. Identity entries are
  /// allowed in the input and disappear.
  ReducedWord reduce(std::span<const FactorElement> raw) const;
  ReducedWord concat(const ReducedWord& u, const ReducedWord& v) const;
  ReducedWord invert(const ReducedWord& u) const;
  /// The image of a factor element in the free product.
  ReducedWord embed(FactorElement g) const;

  /// Number of reduced words of length <= radius, saturating at
  /// UINT64_MAX.
  std::uint64_t ball_size(std::size_t radius) const;
  /// Throws BallTooLarge when the ball would exceed `cap` members.
  Ball enumerate_ball(std::size_t radius, std::uint64_t cap = kDefaultBallCap) const;

  /// "ε" for the identity, otherwise "f0:3·f1:2".
  std::string render(const ReducedWord& u) const;
  /// Parses "f<i>:<e>" tokens separated by "·" or whitespace ("ε" or empty
  /// text is the empty product). Identity letters are kept; throws
  /// InvalidElement for unknown factors or elements.
  std::vector<FactorElement> parse_raw(std::string_view text) const;
  /// parse_raw followed by reduce.
  ReducedWord parse(std::string_view text) const { return reduce(parse_raw(text)); }

 private:
  void check_word(const ReducedWord& u) const;
  // Pushes g onto a stack holding a normal form, merging with the top.
  void push_letter(std::vector<Letter>& stack, FactorElement g) const;

  std::vector<FactorGroup> factors_;
};

}  // namespace ladderlab
