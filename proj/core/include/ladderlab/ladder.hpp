#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ladderlab/free_product.hpp"
#include "ladderlab/group.hpp"
#include "ladderlab/word.hpp"

namespace ladderlab {

/// Truth table of a formula phi(x, y) over a finite tuple space: row i is the
/// i-th x-tuple, column j the j-th y-tuple.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool holds(std::size_t i, std::size_t j) const {
    return (row_bits_[i * row_words_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool value);

  std::span<const std::uint64_t> row(std::size_t i) const {
    return {row_bits_.data() + i * row_words_, row_words_};
  }
  std::span<const std::uint64_t> col(std::size_t j) const {
    return {col_bits_.data() + j * col_words_, col_words_};
  }

  Relation negated() const;
  friend Relation operator|(const Relation& p, const Relation& q);
  friend Relation operator&(const Relation& p, const Relation& q);
  bool operator==(const Relation&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::size_t row_words_ = 0, col_words_ = 0;
  std::vector<std::uint64_t> row_bits_;
  std::vector<std::uint64_t> col_bits_;
};

/// Mixed-radix enumeration of tuples; the first coordinate is most
/// significant, so tuple indices follow lexicographic order.
class TupleSpace {
 public:
  TupleSpace() = default;
  explicit TupleSpace(std::vector<std::size_t> radices);
  TupleSpace(std::size_t arity, std::size_t radix)
      : TupleSpace(std::vector<std::size_t>(arity, radix)) {}

  std::size_t arity() const { return radices_.size(); }
  /// Saturates at SIZE_MAX.
  std::size_t size() const { return size_; }
  std::vector<std::uint32_t> decode(std::size_t index) const;

 private:
  std::vector<std::size_t> radices_;
  std::size_t size_ = 1;
};

/// Rows as value indices (one per coordinate) into the search domain.
struct Ladder {
  std::size_t m = 0;
  std::vector<std::vector<std::uint32_t>> a_rows;
  std::vector<std::vector<std::uint32_t>> b_rows;
};

struct IndexResult {
  std::size_t index = 0;
  std::optional<Ladder> witness;  // absent for supplied indices
  bool cutoff_hit = false;
  std::uint64_t nodes_explored = 0;
};

enum class DomainKind { FreeProductBall, WholeFiniteFactor };

/// Values the coordinates of x- and y-tuples range over.
struct SearchDomain {
  DomainKind kind = DomainKind::FreeProductBall;
  std::size_t radius = 0;   // FreeProductBall
  FactorId factor;          // WholeFiniteFactor
  std::vector<ReducedWord> values;

  static SearchDomain ball(const FreeProduct& fp, std::size_t radius,
                           std::uint64_t cap = kDefaultBallCap);
  static SearchDomain whole_factor(const FreeProduct& fp, FactorId f);
};

inline constexpr std::size_t kDefaultCutoff = 8;
inline constexpr std::uint64_t kDefaultRelationCap = 50'000'000;

struct SearchOptions {
  std::size_t cutoff = kDefaultCutoff;
  unsigned threads = 1;
  /// Largest admissible rows*cols of the relation.
  std::uint64_t relation_cap = kDefaultRelationCap;
};

/// Truth table of "w = 1" with every coordinate ranging over domain.values.
Relation build_relation(const FreeProduct& fp, const GroupWord& w, const SearchDomain& domain,
                        std::uint64_t cap = kDefaultRelationCap);
/// Truth table of "w = 1" where each coordinate ranges over the factor named
/// by its annotation (the lemma's separated interpretation). Coordinates not
/// occurring in w range over the first factor. Returns per-coordinate value
/// lists through `x_values`/`y_values` when given.
Relation build_annotated_relation(const FreeProduct& fp, const GroupWord& annotated,
                                  std::vector<std::vector<ReducedWord>>* x_values = nullptr,
                                  std::vector<std::vector<ReducedWord>>* y_values = nullptr,
                                  std::uint64_t cap = kDefaultRelationCap);
/// Truth table of "w = 1" evaluated inside one finite group, annotations
/// ignored; coordinates range over all elements.
Relation build_factor_relation(const FactorGroup& group, const GroupWord& w,
                               std::uint64_t cap = kDefaultRelationCap);

/// Depth-first search for the longest ladder: rows a_1..a_m, b_1..b_m with
/// rel(a_i, b_j) iff i <= j. Returns the lexicographically least ladder of
/// maximal length, stopping at `cutoff`.
IndexResult search_ladder(const Relation& rel, const SearchOptions& options = {});

/// Checks the ladder condition for tuple indices into rel.
bool is_ladder(const Relation& rel, std::span<const std::size_t> a_rows,
               std::span<const std::size_t> b_rows);
/// Checks the ladder condition by evaluating w in the free product.
bool is_ladder(const FreeProduct& fp, const GroupWord& w,
               std::span<const std::vector<ReducedWord>> a_rows,
               std::span<const std::vector<ReducedWord>> b_rows);
/// Checks the ladder condition for a single-factor block inside its factor.
bool is_ladder(const FactorGroup& group, const GroupWord& block,
               std::span<const std::vector<FactorElement>> a_rows,
               std::span<const std::vector<FactorElement>> b_rows);

/// Stability index of "w = 1" relative to the free product and the domain.
IndexResult max_ladder(const FreeProduct& fp, const GroupWord& w, const SearchDomain& domain,
                       const SearchOptions& options = {});

/// Index of "u = 1" (or "u != 1") over a whole factor. The block is reduced
/// to its canonical shape first. Declared-infinite factors answer from their
/// supplied indices (MissingSuppliedIndex when absent).
IndexResult qf_stability_index(const FactorGroup& group, const GroupWord& block, bool negated,
                               const SearchOptions& options = {});

/// Cutoff that a finite relation can never reach: ladders of length >= 2
/// have pairwise distinct rows, so the index is at most min(rows, cols).
std::size_t exhaustive_cutoff(const Relation& rel);

/// Expands a ladder's rows to domain values.
std::vector<std::vector<ReducedWord>> ladder_values(const std::vector<std::vector<std::uint32_t>>& rows,
                                                    const std::vector<ReducedWord>& values);

}  // namespace ladderlab
