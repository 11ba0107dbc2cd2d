#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ladderlab/bound_value.hpp"
#include "ladderlab/free_product.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/ramsey.hpp"
#include "ladderlab/word.hpp"

namespace ladderlab {

enum class Polarity { Equals, NotEquals };
std::string to_string(Polarity p);

// Rules for boolean combinations of formulas with known stability indices.

/// Size of the monochromatic subset the Ramsey arguments ask for. Only pairs
/// {i, j} with i != j are coloured, so a monochromatic subset of size mu
/// yields a ladder of length mu - 1 for one of the parts (pair a_i with the
/// b of the next index). Exceeding every index n therefore needs
/// mu = max + 2.
BoundValue ramsey_mu(const BoundValue& max_index);

/// Index bound for the negation of a formula with index n: n + 1.
BoundValue negation_bound(const BoundValue& n);
/// R(2 colours, ramsey_mu(max(n_phi, n_psi))).
BoundValue disjunction_bound(const BoundValue& n_phi, const BoundValue& n_psi);
/// R(2 colours, max(n_phi, n_psi) + 1): the rule with mu one smaller. Not an
/// upper bound in general (x1 y1 = 1 or x2 y2 = 1 over Z3 has index 3 while
/// this gives 2); kept for comparison.
BoundValue literal_disjunction_bound(const BoundValue& n_phi, const BoundValue& n_psi);
/// De Morgan through negation_bound and disjunction_bound.
BoundValue conjunction_bound(const BoundValue& n_phi, const BoundValue& n_psi);

// Certificate trace. Steps are stored children-first; each step's value is
// determined by its children's values and its payload, except for leaves.

/// Stability index of one block shape in one factor (leaf).
struct BaseIndexStep {
  FactorId factor;
  std::string shape;
  Polarity polarity = Polarity::Equals;
  std::string source;  // "search", "supplied" or "oracle"
};
/// child + 1
struct NegationStep {};
/// max of children
struct MaxStep {};
/// ramsey_mu(max of children)
struct MuStep {};
/// ramsey_upper(colors, child). `ell` is the number of blocks; the colour
/// count is 4^ell (the per-block case colouring), while 4*ell is recorded
/// as the literal count for reference.
struct RamseyStep {
  BigInt colors;
  std::size_t ell = 0;
  RamseyMethod method = RamseyMethod::Trivial;
};
/// A proper contiguous sub-product of blocks [first, last] (1-based) in one
/// polarity; value equals its child.
struct SubproductStep {
  std::size_t first = 0;
  std::size_t last = 0;
  Polarity polarity = Polarity::Equals;
  std::string word;
};
/// The whole Theorem pipeline; value equals its child.
struct TheoremStep {
  std::string word;
  std::string rewritten;
  std::size_t radius = 0;
  std::size_t factors = 0;
  std::size_t ell = 0;
};
/// A formula that holds everywhere has index 1 (leaf).
struct ConstantStep {};

using StepPayload = std::variant<BaseIndexStep, NegationStep, MaxStep, MuStep, RamseyStep,
                                 SubproductStep, TheoremStep, ConstantStep>;

struct TraceStep {
  BoundValue value;
  std::vector<std::size_t> children;  // indices of earlier steps
  StepPayload payload;
};

struct BoundCertificate {
  BoundValue bound;
  std::vector<TraceStep> steps;  // root is steps.back()

  const TraceStep& root() const { return steps.back(); }
  /// ell recorded by the Theorem step, if any.
  std::optional<std::size_t> ell() const;
};

/// Recomputes every non-leaf step from its children and returns the root
/// value. Throws CertificateError on structural problems.
BoundValue replay(const BoundCertificate& cert);
/// True iff every stored value equals its recomputed value and the root
/// equals the bound.
bool certificate_consistent(const BoundCertificate& cert);

nlohmann::json to_json(const BoundCertificate& cert);
BoundCertificate certificate_from_json(const nlohmann::json& doc);

/// Answers the base stability index of a single-factor block shape. For
/// NotEquals it may return nullopt, in which case the caller derives the
/// bound with negation_bound.
struct BaseAnswer {
  BoundValue value;
  std::string source;
};
using BaseIndexOracle =
    std::function<std::optional<BaseAnswer>(const FactorGroup&, const GroupWord& shape, Polarity)>;

/// Exhaustive ladder search for finite factors (memoized, thread-safe),
/// supplied indices for infinite stubs. NotEquals is answered only when a
/// stub supplies it.
BaseIndexOracle search_base_oracle(SearchOptions options = {});

/// Bound for "w = 1" under separated interpretations (each block's
/// variables in its own factor), by induction on the number of blocks.
BoundCertificate lemma_bound(const BlockDecomposition& decomp,
                             const std::vector<FactorGroup>& factors,
                             const BaseIndexOracle& base);

/// change_of_variables -> block_decompose -> lemma_bound.
BoundCertificate theorem_bound(const GroupWord& w, std::size_t r,
                               const std::vector<FactorGroup>& factors,
                               const BaseIndexOracle& base);
BoundCertificate theorem_bound(const GroupWord& w, std::size_t r,
                               const std::vector<FactorGroup>& factors);

}  // namespace ladderlab
