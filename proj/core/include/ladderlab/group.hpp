#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ladderlab {

/// Position of a factor inside a free product (0-based).
struct FactorId {
  std::uint32_t index = 0;
  auto operator<=>(const FactorId&) const = default;
};

struct FactorElement {
  FactorId factor;
  std::uint32_t elem = 0;
  auto operator<=>(const FactorElement&) const = default;
};

/// Externally supplied stability indices for a block shape of a factor whose
/// elements are never computed with. `neq` is optional; when absent the
/// not-equals index is derived by the bound calculator.
struct SuppliedIndex {
  std::uint64_t eq = 0;
  std::optional<std::uint64_t> neq;
};

/// A factor group of a free product: either a finite group given by a
/// validated Cayley table, or an infinite stub that only carries supplied
/// stability indices.
///
/// Permutation groups use the convention (s*t)(p) = s(t(p)): t is applied
/// first.
class FactorGroup {
 public:
  /// Builds a finite group from a flat row-major Cayley table, checking
  /// closure, identity, inverses and associativity. Throws AxiomViolation
  /// with a concrete witness.
  static FactorGroup from_table(FactorId id, std::string name,
                                std::vector<std::vector<std::uint32_t>> table);
  static FactorGroup cyclic(FactorId id, std::uint32_t order);
  /// Closure of the given permutations (images of 0..d-1), elements ordered
  /// lexicographically by image list so the identity is element 0.
  static FactorGroup from_permutations(
      FactorId id, std::string name,
      const std::vector<std::vector<std::uint32_t>>& generators);
  static FactorGroup infinite_stub(
      FactorId id, std::string name,
      std::map<std::string, SuppliedIndex> supplied);

  FactorId id() const { return id_; }
  const std::string& name() const { return name_; }
  bool declared_infinite() const { return infinite_; }
  /// Throws InfiniteFactor for stubs.
  std::uint32_t order() const;
  std::uint32_t identity_index() const { return identity_; }
  FactorElement identity() const { return {id_, identity_}; }

  FactorElement mul(FactorElement g, FactorElement h) const;
  FactorElement inv(FactorElement g) const;
  std::vector<FactorElement> elements() const;

  /// Raw index arithmetic without factor checks, for hot loops.
  std::uint32_t mul_index(std::uint32_t g, std::uint32_t h) const {
    return table_[static_cast<std::size_t>(g) * order_ + h];
  }
  std::uint32_t inv_index(std::uint32_t g) const { return inverse_[g]; }

  /// Looks up a supplied index by canonical block shape, falling back to the
  /// "*" wildcard entry.
  std::optional<SuppliedIndex> supplied_index(const std::string& shape) const;
  const std::map<std::string, SuppliedIndex>& supplied_indices() const {
    return supplied_;
  }

  /// Re-labels the group as factor `id` (element tables are unchanged).
  FactorGroup with_id(FactorId id) const;

 private:
  FactorGroup() = default;
  void require_finite(const char* op) const;
  void check_element(FactorElement g) const;

  FactorId id_;
  std::string name_;
  bool infinite_ = false;
  std::uint32_t order_ = 0;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::map<std::string, SuppliedIndex> supplied_;
};

/// Parses a group-spec document:
///   { "name", "kind": "table"|"perm-gens"|"cyclic"|"infinite-stub",
///     "order", "table", "generators", "supplied_indices" }
/// Throws SpecParseError for malformed documents and AxiomViolation for
/// tables that are not groups.
FactorGroup load_group(const nlohmann::json& spec, FactorId id);
FactorGroup load_group_text(const std::string& text, FactorId id);
FactorGroup load_group_file(const std::filesystem::path& path, FactorId id);

}  // namespace ladderlab
