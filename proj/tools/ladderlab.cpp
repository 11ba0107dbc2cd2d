// ladderlab: command-line front end for free-product normal forms, ladder
// (stability index) search and Ramsey-based index bounds.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ladderlab/errors.hpp"
#include "ladderlab/harness.hpp"
#include "ladderlab/ramsey.hpp"

using namespace ladderlab;

namespace {

struct Options {
  std::vector<std::string> groups;
  std::string word;
  std::size_t radius = 1;
  std::size_t cutoff = kDefaultCutoff;
  bool json = false;
  bool csv = false;
  unsigned threads = 1;
  std::uint64_t cap = kDefaultBallCap;
  // index
  std::optional<std::uint32_t> factor;
  bool negate = false;
  // ramsey
  std::string colors = "2";
  std::string target = "3";
  // verify
  std::optional<std::string> force_bound;
};

Context context_of(const Options& o) {
  std::vector<std::filesystem::path> files(o.groups.begin(), o.groups.end());
  return load_context(files);
}

void print_witness(const std::optional<RenderedLadder>& w) {
  if (!w) return;
  for (std::size_t i = 0; i < w->a_rows.size(); ++i) {
    std::cout << "  a" << i + 1 << " = (";
    for (std::size_t c = 0; c < w->a_rows[i].size(); ++c)
      std::cout << (c ? ", " : "") << w->a_rows[i][c];
    std::cout << ")   b" << i + 1 << " = (";
    for (std::size_t c = 0; c < w->b_rows[i].size(); ++c)
      std::cout << (c ? ", " : "") << w->b_rows[i][c];
    std::cout << ")\n";
  }
}

int run_reduce(const Options& o) {
  const auto ctx = context_of(o);
  const auto out = cmd_reduce(ctx, o.word);
  if (o.json)
    std::cout << nlohmann::json{{"input", o.word}, {"reduced", out}}.dump(2) << "\n";
  else
    std::cout << out << "\n";
  return kExitOk;
}

int run_ball(const Options& o) {
  const auto ctx = context_of(o);
  const auto listing = cmd_ball(ctx, o.radius, o.cap);
  if (o.json) {
    std::cout << to_json(listing).dump(2) << "\n";
  } else if (o.csv) {
    std::cout << "index,element\n";
    for (std::size_t i = 0; i < listing.members.size(); ++i)
      std::cout << i << "," << listing.members[i] << "\n";
  } else {
    for (const auto& m : listing.members) std::cout << m << "\n";
    std::cout << "count " << listing.members.size() << "\n";
  }
  return kExitOk;
}

int run_index(const Options& o) {
  const auto ctx = context_of(o);
  IndexRequest req;
  req.word = o.word;
  req.radius = o.radius;
  if (o.factor) req.factor = FactorId{*o.factor};
  req.negated = o.negate;
  req.search.cutoff = o.cutoff;
  req.search.threads = o.threads;
  req.ball_cap = o.cap;
  const auto report = cmd_index(ctx, req);
  if (o.json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else if (o.csv) {
    std::cout << "word,domain,negated,index,cutoff_hit,nodes_explored\n"
              << "\"" << report.word << "\"," << report.domain << "," << report.negated << ","
              << report.result.index << "," << report.result.cutoff_hit << ","
              << report.result.nodes_explored << "\n";
  } else {
    std::cout << "word          " << (report.negated ? "not " : "") << report.word << "\n"
              << "domain        " << report.domain << " (" << report.domain_size << " values)\n"
              << "index         " << report.result.index
              << (report.result.cutoff_hit ? " (cutoff hit, lower bound)" : "") << "\n"
              << "nodes         " << report.result.nodes_explored << "\n";
    print_witness(report.witness);
  }
  return kExitOk;
}

int run_bound(const Options& o) {
  const auto ctx = context_of(o);
  const auto cert = cmd_bound(ctx, o.word, o.radius);
  if (o.json) {
    std::cout << to_json(cert).dump(2) << "\n";
  } else if (o.csv) {
    std::cout << "word,radius,ell,bound\n\"" << o.word << "\"," << o.radius << ","
              << cert.ell().value_or(0) << ",\"" << cert.bound.to_string() << "\"\n";
  } else {
    std::cout << "word    " << o.word << "\n"
              << "radius  " << o.radius << "\n"
              << "ell     " << cert.ell().value_or(0) << "\n"
              << "steps   " << cert.steps.size() << "\n"
              << "bound   " << cert.bound.to_string() << "\n";
  }
  return kExitOk;
}

int run_verify(const Options& o) {
  const auto ctx = context_of(o);
  VerifyOptions vo;
  vo.cutoff = o.cutoff;
  vo.threads = o.threads;
  vo.ball_cap = o.cap;
  if (o.force_bound) vo.bound_override = BoundValue::parse(*o.force_bound);
  const auto report = cmd_verify(ctx, o.word, o.radius, vo);
  if (o.json) {
    std::cout << to_json(report).dump(2) << "\n";
  } else if (o.csv) {
    std::cout << csv_header(report) << "\n" << csv_row(report) << "\n";
  } else {
    std::cout << "word            " << report.word << "\n"
              << "radius          " << report.radius << "\n"
              << "bound           " << report.bound.to_string() << "\n"
              << "search cutoff   " << report.cutoff << "\n"
              << "observed index  " << report.observed_index << "\n"
              << "verdict         " << to_string(report.verdict) << "\n"
              << "digest          " << report.config_digest << "\n";
    print_witness(report.witness);
  }
  if (report.verdict == Verdict::Violation)
    std::cerr << "ladderlab: VIOLATION: observed index exceeds the computed bound\n";
  return exit_code_for(report.verdict);
}

int run_ramsey(const Options& o) {
  const RamseyQuery q{BigInt(o.colors), BoundValue::parse(o.target)};
  const auto r = ramsey_upper(q);
  if (o.json)
    std::cout << nlohmann::json{{"colors", o.colors},
                                {"target", q.target.to_string()},
                                {"value", r.value.to_string()},
                                {"method", to_string(r.method)}}
                     .dump(2)
              << "\n";
  else
    std::cout << r.value.to_string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ladderlab: stability-index search and bounds in free products"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool needs_word, bool needs_radius) {
    sub->add_option("--groups", o.groups, "group-spec JSON files, one per factor")
        ->required()
        ->expected(1, -1);
    if (needs_word) sub->add_option("--word", o.word, "word (DSL, or letters for reduce)");
    if (needs_radius) sub->add_option("--radius", o.radius, "ball radius r");
    sub->add_flag("--json", o.json, "structured output");
    sub->add_flag("--csv", o.csv, "flat rows");
    sub->add_option("--threads", o.threads, "worker threads for the ladder search");
    sub->add_option("--cap", o.cap, "ball member cap");
  };

  auto* reduce = app.add_subcommand("reduce", "normal form of a product of letters f<i>:<e>");
  add_common(reduce, true, false);
  auto* ball = app.add_subcommand("ball", "list the ball of radius r");
  add_common(ball, false, true);
  auto* index = app.add_subcommand("index", "stability index of w = 1 by ladder search");
  add_common(index, true, true);
  index->add_option("--cutoff", o.cutoff, "stop once a ladder of this length is found");
  index->add_option("--factor", o.factor, "search over a whole factor instead of the ball");
  index->add_flag("--negate", o.negate, "use w != 1");
  auto* bound = app.add_subcommand("bound", "bound certificate for w over the ball");
  add_common(bound, true, true);
  auto* verify = app.add_subcommand("verify", "check the bound against ladder search");
  add_common(verify, true, true);
  verify->add_option("--cutoff", o.cutoff, "largest ladder length searched");
  verify->add_option("--debug-force-bound", o.force_bound, "replace the computed bound")
      ->group("");
  auto* ramsey = app.add_subcommand("ramsey", "upper bound on R(k, 2, m)");
  ramsey->add_option("--colors", o.colors, "number of colours k");
  ramsey->add_option("--target", o.target, "monochromatic subset size m");
  ramsey->add_flag("--json", o.json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*reduce) return run_reduce(o);
    if (*ball) return run_ball(o);
    if (*index) return run_index(o);
    if (*bound) return run_bound(o);
    if (*verify) return run_verify(o);
    if (*ramsey) return run_ramsey(o);
  } catch (const Error& e) {
    std::cerr << "ladderlab: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "ladderlab: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "ladderlab: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
