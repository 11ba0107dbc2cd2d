#include "ladderlab/harness.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ladderlab/errors.hpp"
#include "ladderlab/word.hpp"

namespace ladderlab {

int exit_code_for(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::Parse: return kExitParse;
    case ErrorClass::Resource: return kExitResource;
    case ErrorClass::Domain: return kExitFailure;
  }
  return kExitFailure;
}

Context make_context(std::vector<nlohmann::json> documents) {
  Context ctx;
  for (std::uint32_t i = 0; i < documents.size(); ++i)
    ctx.groups.push_back(load_group(documents[i], FactorId{i}));
  ctx.documents = std::move(documents);
  ctx.product = FreeProduct(ctx.groups);
  return ctx;
}

Context load_context(const std::vector<std::filesystem::path>& files) {
  std::vector<nlohmann::json> docs;
  for (const auto& path : files) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open group spec " + path.string());
    try {
      docs.push_back(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw SpecParseError(path.string() + " is not valid JSON: " + e.what());
    }
  }
  return make_context(std::move(docs));
}

std::string config_digest(const Context& ctx, const std::string& word, std::size_t radius,
                          std::size_t cutoff) {
  std::string canonical;
  for (const auto& d : ctx.documents) canonical += d.dump() + "\n";
  canonical += render(parse_word(word)) + "\n" + std::to_string(radius) + "\n" +
               std::to_string(cutoff);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cmd_reduce(const Context& ctx, const std::string& raw) {
  return ctx.product.render(ctx.product.parse(raw));
}

BallListing cmd_ball(const Context& ctx, std::size_t radius, std::uint64_t cap) {
  BallListing out;
  out.radius = radius;
  for (const auto& u : ctx.product.enumerate_ball(radius, cap).members)
    out.members.push_back(ctx.product.render(u));
  return out;
}

namespace {

RenderedLadder render_ladder(const FreeProduct& fp, const Ladder& ladder,
                             const std::vector<ReducedWord>& values) {
  RenderedLadder out;
  auto render_rows = [&](const std::vector<std::vector<std::uint32_t>>& rows) {
    std::vector<std::vector<std::string>> r;
    for (const auto& tuple : ladder_values(rows, values)) {
      std::vector<std::string> cells;
      for (const auto& v : tuple) cells.push_back(fp.render(v));
      r.push_back(std::move(cells));
    }
    return r;
  };
  out.a_rows = render_rows(ladder.a_rows);
  out.b_rows = render_rows(ladder.b_rows);
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

IndexReport cmd_index(const Context& ctx, const IndexRequest& request) {
  const auto w = parse_word(request.word);
  const auto domain = request.factor ? SearchDomain::whole_factor(ctx.product, *request.factor)
                                     : SearchDomain::ball(ctx.product, request.radius, request.ball_cap);
  auto rel = build_relation(ctx.product, w, domain, request.search.relation_cap);
  if (request.negated) rel = rel.negated();
  IndexReport report;
  report.word = render(w);
  report.domain = request.factor ? "factor f" + std::to_string(request.factor->index)
                                 : "ball r=" + std::to_string(request.radius);
  report.domain_size = domain.values.size();
  report.negated = request.negated;
  report.result = search_ladder(rel, request.search);
  if (report.result.witness) {
    Ladder decoded;
    decoded.m = report.result.witness->m;
    const TupleSpace xs(w.arity_x(), domain.values.size()), ys(w.arity_y(), domain.values.size());
    for (const auto& r : report.result.witness->a_rows) decoded.a_rows.push_back(xs.decode(r.front()));
    for (const auto& r : report.result.witness->b_rows) decoded.b_rows.push_back(ys.decode(r.front()));
    report.result.witness = decoded;
    report.witness = render_ladder(ctx.product, decoded, domain.values);
  }
  return report;
}

BoundCertificate cmd_bound(const Context& ctx, const std::string& word, std::size_t radius) {
  return theorem_bound(parse_word(word), radius, ctx.groups);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "VERIFIED";
    case Verdict::CutoffInconclusive: return "CUTOFF_INCONCLUSIVE";
    case Verdict::Violation: return "VIOLATION";
  }
  return "UNKNOWN";
}

int exit_code_for(Verdict v) {
  switch (v) {
    case Verdict::Verified: return kExitOk;
    case Verdict::CutoffInconclusive: return kExitInconclusive;
    case Verdict::Violation: return kExitViolation;
  }
  return kExitFailure;
}

VerificationReport cmd_verify(const Context& ctx, const std::string& word, std::size_t radius,
                              const VerifyOptions& options) {
  if (!ctx.product.all_finite())
    throw InfiniteFactor("verify needs finite factors (ladder search enumerates the ball)");
  if (options.cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  const auto w = parse_word(word);

  VerificationReport report;
  report.word = render(w);
  report.radius = radius;
  report.config_digest = config_digest(ctx, word, radius, options.cutoff);

  auto t0 = std::chrono::steady_clock::now();
  const auto cert = theorem_bound(w, radius, ctx.groups);
  report.bound = options.bound_override.value_or(cert.bound);
  report.ell = cert.ell().value_or(0);
  report.bound_ms = elapsed_ms(t0);

  // Reaching bound + 1 decides a violation; the requested cutoff caps work.
  const BoundValue violation_depth = report.bound.successor();
  report.cutoff = violation_depth < BoundValue(options.cutoff)
                      ? static_cast<std::size_t>(*violation_depth.to_u64())
                      : options.cutoff;

  t0 = std::chrono::steady_clock::now();
  const auto domain = SearchDomain::ball(ctx.product, radius, options.ball_cap);
  SearchOptions search;
  search.cutoff = report.cutoff;
  search.threads = options.threads;
  const auto result = max_ladder(ctx.product, w, domain, search);
  report.search_ms = elapsed_ms(t0);

  report.observed_index = result.index;
  report.cutoff_hit = result.cutoff_hit;
  report.nodes_explored = result.nodes_explored;
  if (result.witness) report.witness = render_ladder(ctx.product, *result.witness, domain.values);

  if (BoundValue(report.observed_index) > report.bound)
    report.verdict = Verdict::Violation;
  else if (!report.cutoff_hit)
    report.verdict = Verdict::Verified;
  else
    report.verdict = Verdict::CutoffInconclusive;
  return report;
}

namespace {

nlohmann::json witness_json(const std::optional<RenderedLadder>& w) {
  if (!w) return nullptr;
  return {{"m", w->a_rows.size()}, {"a_rows", w->a_rows}, {"b_rows", w->b_rows}};
}

}  // namespace

nlohmann::json to_json(const BallListing& listing) {
  return {{"radius", listing.radius}, {"count", listing.members.size()}, {"members", listing.members}};
}

nlohmann::json to_json(const IndexReport& report) {
  return {{"word", report.word},
          {"domain", report.domain},
          {"domain_size", report.domain_size},
          {"negated", report.negated},
          {"index", report.result.index},
          {"cutoff_hit", report.result.cutoff_hit},
          {"nodes_explored", report.result.nodes_explored},
          {"witness", witness_json(report.witness)}};
}

nlohmann::json to_json(const VerificationReport& r) {
  return {{"config_digest", r.config_digest},
          {"word", r.word},
          {"radius", r.radius},
          {"bound", r.bound.to_string()},
          {"ell", r.ell},
          {"cutoff", r.cutoff},
          {"observed_index", r.observed_index},
          {"cutoff_hit", r.cutoff_hit},
          {"nodes_explored", r.nodes_explored},
          {"verdict", to_string(r.verdict)},
          {"timings_ms", {{"bound", r.bound_ms}, {"search", r.search_ms}}},
          {"witness", witness_json(r.witness)}};
}

std::string csv_header(const VerificationReport&) {
  return "config_digest,word,radius,bound,ell,cutoff,observed_index,cutoff_hit,verdict,bound_ms,"
         "search_ms";
}

std::string csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << r.config_digest << ",\"" << r.word << "\"," << r.radius << ",\"" << r.bound.to_string()
     << "\"," << r.ell << "," << r.cutoff << "," << r.observed_index << ","
     << (r.cutoff_hit ? "true" : "false") << "," << to_string(r.verdict) << "," << r.bound_ms
     << "," << r.search_ms;
  return os.str();
}

}  // namespace ladderlab
