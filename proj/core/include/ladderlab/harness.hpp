#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ladderlab/bound_value.hpp"
#include "ladderlab/bounds.hpp"
#include "ladderlab/errors.hpp"
#include "ladderlab/free_product.hpp"
#include "ladderlab/ladder.hpp"

namespace ladderlab {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitParse = 2,
  kExitResource = 3,
  kExitInconclusive = 4,
  kExitViolation = 5,
};

int exit_code_for(const Error& e);

/// Factor groups of one run plus the documents they were loaded from.
struct Context {
  std::vector<nlohmann::json> documents;
  std::vector<FactorGroup> groups;
  FreeProduct product{std::vector<FactorGroup>{}};
};

Context make_context(std::vector<nlohmann::json> documents);
Context load_context(const std::vector<std::filesystem::path>& files);

/// FNV-1a 64 of the canonical inputs, as 16 hex digits.
std::string config_digest(const Context& ctx, const std::string& word, std::size_t radius,
                          std::size_t cutoff);

std::string cmd_reduce(const Context& ctx, const std::string& raw);

struct BallListing {
  std::size_t radius = 0;
  std::vector<std::string> members;
};
BallListing cmd_ball(const Context& ctx, std::size_t radius, std::uint64_t cap = kDefaultBallCap);

struct IndexRequest {
  std::string word;
  std::size_t radius = 1;            // ball domain, unless factor is set
  std::optional<FactorId> factor;    // whole-factor domain
  bool negated = false;
  SearchOptions search;
  std::uint64_t ball_cap = kDefaultBallCap;
};

struct RenderedLadder {
  std::vector<std::vector<std::string>> a_rows;
  std::vector<std::vector<std::string>> b_rows;
};

struct IndexReport {
  std::string word;
  std::string domain;
  std::size_t domain_size = 0;
  bool negated = false;
  IndexResult result;
  std::optional<RenderedLadder> witness;
};
IndexReport cmd_index(const Context& ctx, const IndexRequest& request);

BoundCertificate cmd_bound(const Context& ctx, const std::string& word, std::size_t radius);

enum class Verdict { Verified, CutoffInconclusive, Violation };
std::string to_string(Verdict v);
int exit_code_for(Verdict v);

struct VerifyOptions {
  std::size_t cutoff = kDefaultCutoff;
  unsigned threads = 1;
  std::uint64_t ball_cap = kDefaultBallCap;
  /// Test hook: replaces the computed bound (fault injection).
  std::optional<BoundValue> bound_override;
};

struct VerificationReport {
  std::string config_digest;
  std::string word;
  std::size_t radius = 0;
  BoundValue bound;
  std::size_t ell = 0;
  std::size_t cutoff = 0;  // the cutoff actually used by the search
  std::size_t observed_index = 0;
  bool cutoff_hit = false;
  std::uint64_t nodes_explored = 0;
  Verdict verdict = Verdict::CutoffInconclusive;
  double bound_ms = 0;
  double search_ms = 0;
  std::optional<RenderedLadder> witness;
};

/// Computes the bound, then searches the ball with cutoff min(bound + 1,
/// requested cutoff): reaching bound + 1 proves a violation, reaching the
/// requested cutoff below that is inconclusive.
VerificationReport cmd_verify(const Context& ctx, const std::string& word, std::size_t radius,
                              const VerifyOptions& options = {});

nlohmann::json to_json(const BallListing& listing);
nlohmann::json to_json(const IndexReport& report);
nlohmann::json to_json(const VerificationReport& report);

std::string csv_header(const VerificationReport&);
std::string csv_row(const VerificationReport& report);

}  // namespace ladderlab
