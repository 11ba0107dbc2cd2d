#include <gtest/gtest.h>

#include "ladderlab/bounds.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/word.hpp"
#include "support/oracles.hpp"

using namespace ladderlab;
namespace lt = ladderlab::testing;

namespace {

// Answers every shape with fixed indices.
BaseIndexOracle constant_oracle(std::uint64_t eq, std::optional<std::uint64_t> neq) {
  return [=](const FactorGroup&, const GroupWord&, Polarity p) -> std::optional<BaseAnswer> {
    if (p == Polarity::Equals) return BaseAnswer{eq, "oracle"};
    if (neq) return BaseAnswer{*neq, "oracle"};
    return std::nullopt;
  };
}

std::vector<FactorGroup> z2z2() { return {lt::cyclic(2, 0), lt::cyclic(2, 1)}; }

template <class T>
std::size_t count_steps(const BoundCertificate& c) {
  std::size_t n = 0;
  for (const auto& s : c.steps) n += std::holds_alternative<T>(s.payload);
  return n;
}

}  // namespace

TEST(BooleanBounds, Examples) {
  EXPECT_EQ(negation_bound(1), BoundValue(2));
  EXPECT_EQ(negation_bound(0), BoundValue(1));
  EXPECT_EQ(ramsey_mu(1), BoundValue(3));
  // R(2 colours, 3) = 6 and the recurrence gives R(4, 4) <= 20.
  EXPECT_EQ(disjunction_bound(1, 1), BoundValue(6));
  EXPECT_EQ(disjunction_bound(2, 1), BoundValue(20));
  EXPECT_EQ(disjunction_bound(1, 2), BoundValue(20));
  EXPECT_EQ(disjunction_bound(0, 0), BoundValue(2));
  EXPECT_EQ(conjunction_bound(1, 1), BoundValue(21));
  EXPECT_EQ(conjunction_bound(0, 0), BoundValue(7));
  EXPECT_EQ(literal_disjunction_bound(1, 1), BoundValue(2));
  EXPECT_EQ(literal_disjunction_bound(2, 1), BoundValue(6));
}

// "x1 y1 = 1 or x2 y2 = 1" over Z3: each part has index 1, the disjunction
// has the 3-ladder a = (0,0) (0,1) (1,1), b = (1,0) (0,0) (0,2).
TEST(BooleanBounds, LiteralDisjunctionRuleIsTooSmall) {
  const auto z3 = lt::cyclic(3);
  const auto phi = build_factor_relation(z3, parse_word("x1 y1").with_arity(2, 2));
  const auto psi = build_factor_relation(z3, parse_word("x2 y2").with_arity(2, 2));
  auto index = [](const Relation& r) {
    SearchOptions o;
    o.cutoff = exhaustive_cutoff(r);
    return search_ladder(r, o).index;
  };
  ASSERT_EQ(index(phi), 1u);
  ASSERT_EQ(index(psi), 1u);
  const auto either = phi | psi;
  const std::vector<std::size_t> a{0, 1, 4}, b{3, 0, 2};  // (u, v) -> 3u + v
  EXPECT_TRUE(is_ladder(either, a, b));
  EXPECT_EQ(index(either), 3u);
  EXPECT_GT(BoundValue(3), literal_disjunction_bound(1, 1));
  EXPECT_LE(BoundValue(3), disjunction_bound(1, 1));
}

// index(not phi) <= index(phi) + 1 and the disjunction/conjunction rules,
// on brute-force indices over small factors.
TEST(BooleanBounds, DominateBruteForce) {
  for (const auto& g : {lt::cyclic(2), lt::cyclic(3)}) {
    const auto words = lt::all_words(2, 1, 1);
    std::vector<Relation> rels;
    for (const auto& w : words) rels.push_back(build_factor_relation(g, w.with_arity(1, 1)));
    auto index = [](const Relation& r) {
      SearchOptions o;
      o.cutoff = exhaustive_cutoff(r);
      return BoundValue(search_ladder(r, o).index);
    };
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const auto ni = index(rels[i]);
      ASSERT_LE(index(rels[i].negated()), negation_bound(ni));
      for (std::size_t j = 0; j < rels.size(); ++j) {
        const auto nj = index(rels[j]);
        ASSERT_LE(index(rels[i] | rels[j]), disjunction_bound(ni, nj));
        ASSERT_LE(index(rels[i] & rels[j]), conjunction_bound(ni, nj));
      }
    }
  }
}

TEST(LemmaBound, SingleBlockPassesThrough) {
  const auto d = block_decompose(parse_word("x1@0 y1@0"));
  const auto cert = lemma_bound(d, z2z2(), constant_oracle(3, 3));
  EXPECT_EQ(cert.bound, BoundValue(3));
  EXPECT_TRUE(certificate_consistent(cert));
  // Without a supplied not-equals index the negation rule is used.
  EXPECT_EQ(lemma_bound(d, z2z2(), constant_oracle(3, std::nullopt)).bound, BoundValue(4));
}

TEST(LemmaBound, TwoBlocksWithUnitSubproducts) {
  const auto d = block_decompose(parse_word("x1@0 y1@0 x2@1 y2@1"));
  const auto cert = lemma_bound(d, z2z2(), constant_oracle(1, 1));
  EXPECT_EQ(cert.bound, ramsey_upper(16, 3));  // mu = 1 + 2
  const auto& root = std::get<RamseyStep>(cert.root().payload);
  EXPECT_EQ(root.colors, BigInt(16));
  EXPECT_EQ(root.ell, 2u);
  EXPECT_EQ(count_steps<SubproductStep>(cert), 4u);  // two blocks, two polarities
}

TEST(LemmaBound, ThreeBlocksUseAllProperIntervals) {
  const auto d = block_decompose(parse_word("x1@0 x2@1 y1@0"));
  const auto cert = lemma_bound(d, z2z2(), constant_oracle(1, 1));
  // [1,1] [2,2] [3,3] [1,2] [2,3] in both polarities
  EXPECT_EQ(count_steps<SubproductStep>(cert), 10u);
  EXPECT_EQ(count_steps<RamseyStep>(cert), 3u);
  EXPECT_TRUE(certificate_consistent(cert));
}

TEST(LemmaBound, RejectsEqualNeighbours) {
  BlockDecomposition d;
  d.word = parse_word("x1@0 y1@0");
  d.blocks = {{FactorId{0}, 0, 1}, {FactorId{0}, 1, 2}};
  EXPECT_THROW(lemma_bound(d, z2z2(), constant_oracle(1, 1)), AnnotationMismatch);
}

// The lemma's bound dominates the separated (factor-constrained) index.
TEST(LemmaBound, DominatesAnnotatedBruteForce) {
  const FreeProduct fp(z2z2());
  const auto oracle = search_base_oracle();
  for (const char* text : {"x1@0 y1@0 x2@1 y2@1", "x1@0 x2@1 y1@0 y2@1", "x1@0 y1@1 x1@0^-1",
                           "x1@0 y1@1 x1@0^-1 y1@1^-1", "x1@1 x2@0 y1@1^-1 y2@0"}) {
    const auto w = parse_word(text);
    const auto rel = build_annotated_relation(fp, w);
    SearchOptions o;
    o.cutoff = exhaustive_cutoff(rel);
    const auto observed = search_ladder(rel, o).index;
    const auto cert = lemma_bound(block_decompose(w), fp.factors(), oracle);
    EXPECT_LE(BoundValue(observed), cert.bound) << text;
  }
}

TEST(TheoremBound, EmptyWordIsOne) {
  for (std::size_t r : {1u, 2u, 5u}) {
    const auto cert = theorem_bound(GroupWord{}, r, z2z2());
    EXPECT_EQ(cert.bound, BoundValue(1));
    EXPECT_EQ(cert.ell(), 0u);
    EXPECT_TRUE(certificate_consistent(cert));
  }
}

TEST(TheoremBound, CommutatorPipelineShape) {
  const auto cert = theorem_bound(parse_word("x1 y1"), 1, z2z2());
  ASSERT_TRUE(cert.ell().has_value());
  EXPECT_EQ(*cert.ell(), 4u);
  const auto& t = std::get<TheoremStep>(cert.root().payload);
  EXPECT_EQ(t.rewritten, "x1@0 x2@1 y1@0 y2@1");
  EXPECT_EQ(t.factors, 2u);
  EXPECT_TRUE(certificate_consistent(cert));
  EXPECT_GT(cert.bound, BoundValue(8));
}

TEST(TheoremBound, NonDecreasingInRadius) {
  const std::vector<std::vector<FactorGroup>> products{
      z2z2(), {lt::cyclic(2, 0), lt::cyclic(3, 1)}, {lt::cyclic(3, 0), lt::cyclic(3, 1)}};
  for (const auto& factors : products)
    for (const char* text : {"x1 y1", "x1 y1 x1^-1 y1^-1", "x1 y1 x2", "x1 y1^-1"}) {
      BoundValue prev = 0;
      for (std::size_t r = 1; r <= 3; ++r) {
        const auto b = theorem_bound(parse_word(text), r, factors).bound;
        EXPECT_LE(prev, b) << text << " r=" << r;
        prev = b;
      }
    }
}

TEST(TheoremBound, StubFactorsUseSuppliedIndices) {
  const std::vector<FactorGroup> factors{
      lt::cyclic(2, 0),
      FactorGroup::infinite_stub(FactorId{1}, "F", {{"*", {2, 3}}})};
  const auto cert = theorem_bound(parse_word("x1 y1"), 1, factors);
  EXPECT_TRUE(certificate_consistent(cert));
  bool saw_supplied = false;
  for (const auto& s : cert.steps)
    if (const auto* b = std::get_if<BaseIndexStep>(&s.payload))
      saw_supplied |= b->source == "supplied";
  EXPECT_TRUE(saw_supplied);
  const std::vector<FactorGroup> bare{lt::cyclic(2, 0),
                                      FactorGroup::infinite_stub(FactorId{1}, "F", {})};
  EXPECT_THROW(theorem_bound(parse_word("x1 y1"), 1, bare), MissingSuppliedIndex);
}

TEST(Certificate, JsonRoundTripAndTamperDetection) {
  const auto cert = theorem_bound(parse_word("x1 y1 x2"), 2, {lt::cyclic(2, 0), lt::cyclic(3, 1)});
  const auto doc = to_json(cert);
  EXPECT_EQ(doc.at("bound").get<std::string>(), cert.bound.to_string());
  const auto back = certificate_from_json(doc);
  EXPECT_EQ(back.bound, cert.bound);
  EXPECT_EQ(back.steps.size(), cert.steps.size());
  EXPECT_EQ(replay(back), cert.bound);
  EXPECT_EQ(to_json(back), doc);

  auto tampered = back;
  tampered.steps.back().value = tampered.steps.back().value.successor();
  EXPECT_FALSE(certificate_consistent(tampered));

  auto broken = doc;
  broken["trace"][0]["children"] = nlohmann::json::array({999});
  EXPECT_THROW(certificate_from_json(broken), CertificateError);
}
