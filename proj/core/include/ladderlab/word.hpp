#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ladderlab/free_product.hpp"
#include "ladderlab/group.hpp"

namespace ladderlab {

enum class Tuple : std::uint8_t { X, Y };

/// A variable x_p or y_p (1-based position), optionally attached to a factor.
struct VariableSymbol {
  Tuple tuple = Tuple::X;
  std::uint32_t position = 1;
  std::optional<FactorId> annotation;
  auto operator<=>(const VariableSymbol&) const = default;
};

struct Syllable {
  VariableSymbol var;
  int exponent = 1;  // +1 or -1
  auto operator<=>(const Syllable&) const = default;
};

/// A syntactic group word w(x, y). No group-level simplification is ever
/// applied: "x1 x1^-1" keeps both syllables.
class GroupWord {
 public:
  GroupWord() = default;
  /// Arities default to the largest position used in each tuple.
  explicit GroupWord(std::vector<Syllable> syllables);
  GroupWord(std::vector<Syllable> syllables, std::uint32_t arity_x, std::uint32_t arity_y);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t size() const { return syllables_.size(); }
  bool empty() const { return syllables_.empty(); }
  std::uint32_t arity_x() const { return arity_x_; }
  std::uint32_t arity_y() const { return arity_y_; }
  std::uint32_t arity(Tuple t) const { return t == Tuple::X ? arity_x_ : arity_y_; }

  /// True iff every syllable carries a factor annotation (false for the
  /// empty word).
  bool annotated() const;
  /// Same syllables with larger arities; throws ArityMismatch if a position
  /// would fall outside.
  GroupWord with_arity(std::uint32_t arity_x, std::uint32_t arity_y) const;
  /// Reversed syllables with flipped exponents.
  GroupWord formal_inverse() const;
  /// Syllables [begin, end) with the same arities.
  GroupWord slice(std::size_t begin, std::size_t end) const;

  auto operator<=>(const GroupWord&) const = default;

 private:
  std::vector<Syllable> syllables_;
  std::uint32_t arity_x_ = 0;
  std::uint32_t arity_y_ = 0;
};

/// Formal concatenation; arities are the maxima of both sides.
GroupWord concat(const GroupWord& u, const GroupWord& v);

/// Grammar:
///   word := item { item } | ""
///   item := atom [ "^-1" ]
///   atom := var | "(" word ")"
///   var  := ("x"|"y") digits [ "@" digits ]
/// Positions are 1-based. "(...)^-1" is expanded formally.
GroupWord parse_word(std::string_view text);
std::string render(const GroupWord& w);

/// Value of w in the free product with x_p := a[p-1], y_p := b[p-1].
ReducedWord evaluate(const FreeProduct& fp, const GroupWord& w,
                     std::span<const ReducedWord> a, std::span<const ReducedWord> b);

/// Value of a single-factor block inside its factor. All syllables must be
/// annotated with `group`'s id and the assignment must lie in that factor.
FactorElement evaluate_in_factor(const FactorGroup& group, const GroupWord& block,
                                 std::span<const FactorElement> a,
                                 std::span<const FactorElement> b);

/// Factor of each slot of the change-of-variables template: for k = 2 the
/// r+1 slots G H G H ..., for k > 2 the pattern (G1 ... Gk) repeated r times.
std::vector<FactorId> template_factors(std::size_t r, std::size_t k);

/// Replaces every variable by its annotated template (inverse occurrences by
/// the visual inverse). The fresh variable for slot s of v_p is v_{(p-1)S+s+1}
/// where S is the template length.
GroupWord change_of_variables(const GroupWord& w, std::size_t r, std::size_t k);

struct Block {
  FactorId factor;
  std::size_t begin = 0;  // syllable range [begin, end)
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  auto operator<=>(const Block&) const = default;
};

/// Maximal runs of equally-annotated syllables of an annotated word.
struct BlockDecomposition {
  GroupWord word;
  std::vector<Block> blocks;

  std::size_t ell() const { return blocks.size(); }
  /// Syllables of blocks [first, last] (0-based, inclusive) as a word with
  /// the parent's arities.
  GroupWord blocks_word(std::size_t first, std::size_t last) const;
  GroupWord block_word(std::size_t i) const { return blocks_word(i, i); }
};

BlockDecomposition block_decompose(const GroupWord& annotated);

/// Values for the template slots such that their product is z; greedy
/// left-to-right placement, identity elsewhere.
std::vector<FactorElement> interpret_in_template(const FreeProduct& fp, const ReducedWord& z,
                                                 std::size_t r, std::size_t k);

/// Interprets every value of a tuple in the template and flattens the result
/// in fresh-variable order (matching change_of_variables).
std::vector<ReducedWord> expand_assignment(const FreeProduct& fp,
                                           std::span<const ReducedWord> values,
                                           std::size_t r);

/// Strips annotations and renumbers x and y variables by first occurrence,
/// with arities equal to the number of distinct variables used.
GroupWord canonical_shape(const GroupWord& w);

}  // namespace ladderlab
