#include <gtest/gtest.h>

#include "ladderlab/errors.hpp"
#include "ladderlab/harness.hpp"

using namespace ladderlab;

namespace {

nlohmann::json cyclic_doc(int n) {
  return {{"name", "Z" + std::to_string(n)}, {"kind", "cyclic"}, {"order", n}};
}

Context ctx_of(std::initializer_list<int> orders) {
  std::vector<nlohmann::json> docs;
  for (int n : orders) docs.push_back(cyclic_doc(n));
  return make_context(std::move(docs));
}

}  // namespace

TEST(Harness, Reduce) {
  const auto ctx = ctx_of({2, 2});
  EXPECT_EQ(cmd_reduce(ctx, "f0:1 f1:1 f1:1"), "f0:1");
  EXPECT_EQ(cmd_reduce(ctx, ""), "ε");
  try {
    cmd_reduce(ctx, "f7:1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e), kExitParse);
  }
}

TEST(Harness, Ball) {
  const auto ctx = ctx_of({2, 2});
  EXPECT_EQ(cmd_ball(ctx, 2).members.size(), 5u);
  EXPECT_EQ(cmd_ball(ctx, 0).members, (std::vector<std::string>{"ε"}));
  try {
    cmd_ball(ctx_of({5, 5}), 8, 1000);
    FAIL();
  } catch (const BallTooLarge& e) {
    EXPECT_EQ(exit_code_for(e), kExitResource);
  }
  const auto doc = to_json(cmd_ball(ctx, 1));
  EXPECT_EQ(doc.at("count"), 3);
}

TEST(Harness, Index) {
  const auto ctx = ctx_of({2, 2});
  IndexRequest req;
  req.word = "x1 y1^-1";
  req.radius = 1;
  EXPECT_EQ(cmd_index(ctx, req).result.index, 1u);
  req.word = "";
  EXPECT_EQ(cmd_index(ctx, req).result.index, 1u);
  req.word = "x1 y1";
  req.search.cutoff = 1;
  const auto report = cmd_index(ctx, req);
  EXPECT_TRUE(report.result.cutoff_hit);
  ASSERT_TRUE(report.witness);
  EXPECT_EQ(report.witness->a_rows.size(), 1u);
  req.factor = FactorId{1};
  req.search.cutoff = 8;
  EXPECT_EQ(cmd_index(ctx, req).domain_size, 2u);
}

TEST(Harness, Bound) {
  const auto ctx = ctx_of({2, 2});
  EXPECT_EQ(cmd_bound(ctx, "", 3).bound, BoundValue(1));
  EXPECT_EQ(cmd_bound(ctx, "x1 y1", 1).ell(), 4u);
  EXPECT_LE(cmd_bound(ctx, "x1 y1", 1).bound, cmd_bound(ctx, "x1 y1", 2).bound);
}

TEST(Harness, VerifyExamples) {
  const auto r1 = cmd_verify(ctx_of({2, 2}), "x1 y1 x1^-1 y1^-1", 1);
  EXPECT_EQ(r1.verdict, Verdict::Verified);
  EXPECT_EQ(exit_code_for(r1.verdict), kExitOk);
  const auto r2 = cmd_verify(ctx_of({3, 2}), "x1 y1", 1);
  EXPECT_EQ(r2.verdict, Verdict::Verified);
  EXPECT_LE(BoundValue(r2.observed_index), r2.bound);
  EXPECT_FALSE(r2.cutoff_hit);
}

TEST(Harness, ForcedBoundExercisesViolation) {
  VerifyOptions o;
  o.bound_override = BoundValue(0);
  const auto r = cmd_verify(ctx_of({2, 2}), "x1 y1", 1, o);
  EXPECT_EQ(r.verdict, Verdict::Violation);
  EXPECT_EQ(exit_code_for(r.verdict), kExitViolation);
  EXPECT_EQ(r.cutoff, 1u);
}

TEST(Harness, SmallCutoffIsInconclusive) {
  VerifyOptions o;
  o.cutoff = 1;
  const auto r = cmd_verify(ctx_of({2, 2}), "x1 y1", 1, o);
  EXPECT_EQ(r.verdict, Verdict::CutoffInconclusive);
  EXPECT_EQ(exit_code_for(r.verdict), kExitInconclusive);
}

TEST(Harness, ReportsAreDeterministic) {
  const auto ctx = ctx_of({2, 3});
  VerifyOptions one, many;
  many.threads = 4;
  const auto a = cmd_verify(ctx, "x1 y1 x2", 2, one);
  const auto b = cmd_verify(ctx, "x1 y1 x2", 2, many);
  auto strip = [](nlohmann::json j) {
    j.erase("timings_ms");
    j.erase("nodes_explored");
    return j;
  };
  EXPECT_EQ(strip(to_json(a)), strip(to_json(b)));
  EXPECT_EQ(a.config_digest.size(), 16u);
  EXPECT_NE(a.config_digest, cmd_verify(ctx, "x1 y1 x2", 1).config_digest);
  EXPECT_EQ(config_digest(ctx, "x1  y1", 1, 8), config_digest(ctx, "x1 y1", 1, 8));
}

TEST(Harness, VerifyNeedsFiniteFactors) {
  std::vector<nlohmann::json> docs{
      cyclic_doc(2),
      {{"name", "F"}, {"kind", "infinite-stub"}, {"supplied_indices", {{"*", 2}}}}};
  const auto ctx = make_context(docs);
  EXPECT_THROW(cmd_verify(ctx, "x1 y1", 1), InfiniteFactor);
  // the bound alone is fine
  EXPECT_NO_THROW(cmd_bound(ctx, "x1 y1", 1));
}

TEST(Harness, CsvRow) {
  const auto r = cmd_verify(ctx_of({2, 2}), "x1 y1", 1);
  const auto header = csv_header(r);
  const auto row = csv_row(r);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 10);
  EXPECT_NE(row.find("VERIFIED"), std::string::npos);
}
