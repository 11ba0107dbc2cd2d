#include "ladderlab/bounds.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "ladderlab/errors.hpp"

namespace ladderlab {

std::string to_string(Polarity p) { return p == Polarity::Equals ? "eq" : "neq"; }

BoundValue negation_bound(const BoundValue& n) { return n.successor(); }

BoundValue ramsey_mu(const BoundValue& max_index) { return max_index.successor().successor(); }

BoundValue disjunction_bound(const BoundValue& n_phi, const BoundValue& n_psi) {
  return ramsey_upper(BigInt(2), ramsey_mu(std::max(n_phi, n_psi)));
}

BoundValue literal_disjunction_bound(const BoundValue& n_phi, const BoundValue& n_psi) {
  return ramsey_upper(BigInt(2), std::max(n_phi, n_psi).successor());
}

BoundValue conjunction_bound(const BoundValue& n_phi, const BoundValue& n_psi) {
  return negation_bound(disjunction_bound(negation_bound(n_phi), negation_bound(n_psi)));
}

std::optional<std::size_t> BoundCertificate::ell() const {
  for (const auto& s : steps)
    if (const auto* t = std::get_if<TheoremStep>(&s.payload)) return t->ell;
  return std::nullopt;
}

namespace {

BigInt four_pow(std::size_t ell) { return BigInt(1) << static_cast<unsigned>(2 * ell); }

struct Recomputer {
  const std::vector<BoundValue>& values;
  const TraceStep& step;

  const BoundValue& child(std::size_t k) const { return values[step.children[k]]; }
  BoundValue max_children() const {
    if (step.children.empty()) throw CertificateError("step needs at least one child");
    BoundValue m = child(0);
    for (std::size_t k = 1; k < step.children.size(); ++k) m = std::max(m, child(k));
    return m;
  }
  void need_children(std::size_t n) const {
    if (step.children.size() != n)
      throw CertificateError("step expects " + std::to_string(n) + " children");
  }

  BoundValue operator()(const BaseIndexStep&) const {
    need_children(0);
    return step.value;
  }
  BoundValue operator()(const ConstantStep&) const {
    need_children(0);
    return BoundValue(1);
  }
  BoundValue operator()(const NegationStep&) const {
    need_children(1);
    return negation_bound(child(0));
  }
  BoundValue operator()(const MaxStep&) const { return max_children(); }
  BoundValue operator()(const MuStep&) const { return ramsey_mu(max_children()); }
  BoundValue operator()(const RamseyStep& r) const {
    need_children(1);
    return ramsey_upper(r.colors, child(0));
  }
  BoundValue operator()(const SubproductStep&) const {
    need_children(1);
    return child(0);
  }
  BoundValue operator()(const TheoremStep&) const {
    need_children(1);
    return child(0);
  }
};

std::vector<BoundValue> recompute_all(const BoundCertificate& cert) {
  if (cert.steps.empty()) throw CertificateError("certificate has no steps");
  std::vector<BoundValue> values;
  values.reserve(cert.steps.size());
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& step = cert.steps[i];
    for (auto c : step.children)
      if (c >= i) throw CertificateError("step " + std::to_string(i) + " refers forward to " +
                                         std::to_string(c));
    values.push_back(std::visit(Recomputer{values, step}, step.payload));
  }
  return values;
}

}  // namespace

BoundValue replay(const BoundCertificate& cert) { return recompute_all(cert).back(); }

bool certificate_consistent(const BoundCertificate& cert) {
  const auto values = recompute_all(cert);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] != cert.steps[i].value) return false;
  return values.back() == cert.bound;
}

namespace {

struct StepToJson {
  nlohmann::json& out;
  void operator()(const BaseIndexStep& s) const {
    out["kind"] = "base_index";
    out["factor"] = s.factor.index;
    out["shape"] = s.shape;
    out["polarity"] = to_string(s.polarity);
    out["source"] = s.source;
  }
  void operator()(const NegationStep&) const { out["kind"] = "negation"; }
  void operator()(const MaxStep&) const { out["kind"] = "max"; }
  void operator()(const MuStep&) const { out["kind"] = "mu"; }
  void operator()(const ConstantStep&) const { out["kind"] = "constant"; }
  void operator()(const RamseyStep& s) const {
    out["kind"] = "ramsey";
    out["colors"] = s.colors.str();
    out["ell"] = s.ell;
    out["literal_colors"] = 4 * s.ell;
    out["method"] = to_string(s.method);
  }
  void operator()(const SubproductStep& s) const {
    out["kind"] = "subproduct";
    out["range"] = {s.first, s.last};
    out["polarity"] = to_string(s.polarity);
    out["word"] = s.word;
  }
  void operator()(const TheoremStep& s) const {
    out["kind"] = "theorem";
    out["word"] = s.word;
    out["rewritten"] = s.rewritten;
    out["radius"] = s.radius;
    out["factors"] = s.factors;
    out["ell"] = s.ell;
  }
};

Polarity polarity_from(const std::string& s) {
  if (s == "eq") return Polarity::Equals;
  if (s == "neq") return Polarity::NotEquals;
  throw CertificateError("unknown polarity \"" + s + "\"");
}

RamseyMethod method_from(const std::string& s) {
  for (auto m : {RamseyMethod::Trivial, RamseyMethod::Recurrence, RamseyMethod::PowerBound})
    if (to_string(m) == s) return m;
  throw CertificateError("unknown Ramsey method \"" + s + "\"");
}

}  // namespace

nlohmann::json to_json(const BoundCertificate& cert) {
  nlohmann::json trace = nlohmann::json::array();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& step = cert.steps[i];
    nlohmann::json s;
    s["id"] = i;
    std::visit(StepToJson{s}, step.payload);
    s["value"] = step.value.to_string();
    s["children"] = step.children;
    trace.push_back(std::move(s));
  }
  return {{"bound", cert.bound.to_string()}, {"root", cert.steps.size() - 1}, {"trace", trace}};
}

BoundCertificate certificate_from_json(const nlohmann::json& doc) {
  try {
    BoundCertificate cert;
    cert.bound = BoundValue::parse(doc.at("bound").get<std::string>());
    for (const auto& s : doc.at("trace")) {
      TraceStep step;
      step.value = BoundValue::parse(s.at("value").get<std::string>());
      step.children = s.at("children").get<std::vector<std::size_t>>();
      for (auto c : step.children)
        if (c >= cert.steps.size())
          throw CertificateError("step " + std::to_string(cert.steps.size()) +
                                 " refers to step " + std::to_string(c) + ", which is not earlier");
      const auto kind = s.at("kind").get<std::string>();
      if (kind == "base_index") {
        step.payload = BaseIndexStep{FactorId{s.at("factor").get<std::uint32_t>()},
                                     s.at("shape").get<std::string>(),
                                     polarity_from(s.at("polarity").get<std::string>()),
                                     s.at("source").get<std::string>()};
      } else if (kind == "negation") {
        step.payload = NegationStep{};
      } else if (kind == "max") {
        step.payload = MaxStep{};
      } else if (kind == "mu") {
        step.payload = MuStep{};
      } else if (kind == "constant") {
        step.payload = ConstantStep{};
      } else if (kind == "ramsey") {
        step.payload = RamseyStep{BigInt(s.at("colors").get<std::string>()),
                                  s.at("ell").get<std::size_t>(),
                                  method_from(s.at("method").get<std::string>())};
      } else if (kind == "subproduct") {
        const auto range = s.at("range").get<std::vector<std::size_t>>();
        if (range.size() != 2) throw CertificateError("subproduct range needs two entries");
        step.payload = SubproductStep{range[0], range[1],
                                      polarity_from(s.at("polarity").get<std::string>()),
                                      s.at("word").get<std::string>()};
      } else if (kind == "theorem") {
        step.payload = TheoremStep{s.at("word").get<std::string>(),
                                   s.at("rewritten").get<std::string>(),
                                   s.at("radius").get<std::size_t>(),
                                   s.at("factors").get<std::size_t>(),
                                   s.at("ell").get<std::size_t>()};
      } else {
        throw CertificateError("unknown step kind \"" + kind + "\"");
      }
      cert.steps.push_back(std::move(step));
    }
    if (cert.steps.empty()) throw CertificateError("certificate has no steps");
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw CertificateError(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CertificateError(std::string("malformed certificate value: ") + e.what());
  }
}

BaseIndexOracle search_base_oracle(SearchOptions options) {
  options.cutoff = std::numeric_limits<std::size_t>::max();
  struct Cache {
    std::mutex mutex;
    std::map<std::tuple<std::uint32_t, std::string, std::string>, BaseAnswer> values;
  };
  auto cache = std::make_shared<Cache>();
  return [options, cache](const FactorGroup& group, const GroupWord& shape,
                          Polarity polarity) -> std::optional<BaseAnswer> {
    const auto key_shape = render(shape);
    if (group.declared_infinite()) {
      const auto supplied = group.supplied_index(key_shape);
      if (!supplied)
        throw MissingSuppliedIndex("factor " + group.name() + " has no supplied index for \"" +
                                   key_shape + "\"");
      if (polarity == Polarity::Equals) return BaseAnswer{BoundValue(supplied->eq), "supplied"};
      if (supplied->neq) return BaseAnswer{BoundValue(*supplied->neq), "supplied"};
      return std::nullopt;
    }
    if (polarity == Polarity::NotEquals) return std::nullopt;
    const auto key = std::make_tuple(group.id().index, key_shape, group.name());
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->values.find(key); it != cache->values.end()) return it->second;
    }
    const auto result = qf_stability_index(group, shape, false, options);
    BaseAnswer answer{BoundValue(result.index), "search"};
    std::lock_guard lock(cache->mutex);
    cache->values.emplace(key, answer);
    return answer;
  };
}

namespace {

class LemmaBuilder {
 public:
  LemmaBuilder(const BlockDecomposition& decomp, const std::vector<FactorGroup>& factors,
               const BaseIndexOracle& base)
      : decomp_(decomp), factors_(factors), base_(base) {}

  std::size_t bound_of(std::size_t first, std::size_t last) {
    if (first == last) {
      return add(MaxStep{},
                 {base_node(first, Polarity::Equals), base_node(first, Polarity::NotEquals)});
    }
    if (auto it = interval_.find({first, last}); it != interval_.end()) return it->second;
    std::vector<std::size_t> parts;
    for (std::size_t i = first; i <= last; ++i)
      for (std::size_t j = i; j <= last; ++j) {
        if (i == first && j == last) continue;
        parts.push_back(subproduct(i, j, Polarity::Equals));
        parts.push_back(subproduct(i, j, Polarity::NotEquals));
      }
    const auto mu = add(MuStep{}, parts);
    const std::size_t ell = last - first + 1;
    const BigInt colors = four_pow(ell);
    const auto r = ramsey_upper(RamseyQuery{colors, steps_[mu].value});
    const auto node = push(r.value, {mu}, RamseyStep{colors, ell, r.method});
    interval_.emplace(std::make_pair(first, last), node);
    return node;
  }

  std::vector<TraceStep> take_steps() { return std::move(steps_); }

 private:
  std::size_t push(BoundValue value, std::vector<std::size_t> children, StepPayload payload) {
    steps_.push_back({std::move(value), std::move(children), std::move(payload)});
    return steps_.size() - 1;
  }

  std::size_t add(StepPayload payload, std::vector<std::size_t> children) {
    // Max, Mu and Negation only.
    BoundValue v = steps_[children.front()].value;
    for (auto c : children) v = std::max(v, steps_[c].value);
    if (std::holds_alternative<MuStep>(payload)) v = ramsey_mu(v);
    if (std::holds_alternative<NegationStep>(payload)) v = negation_bound(v);
    return push(std::move(v), std::move(children), std::move(payload));
  }

  std::size_t base_node(std::size_t block, Polarity polarity) {
    if (auto it = base_nodes_.find({block, polarity}); it != base_nodes_.end()) return it->second;
    const auto& b = decomp_.blocks[block];
    if (b.factor.index >= factors_.size())
      throw ContextMismatch("block attached to unknown factor f" + std::to_string(b.factor.index));
    const auto& group = factors_[b.factor.index];
    const auto shape = canonical_shape(decomp_.block_word(block));
    const auto answer = base_(group, shape, polarity);
    std::size_t node;
    if (answer) {
      node = push(answer->value, {},
                  BaseIndexStep{b.factor, render(shape), polarity, answer->source});
    } else if (polarity == Polarity::NotEquals) {
      node = add(NegationStep{}, {base_node(block, Polarity::Equals)});
    } else {
      throw MissingSuppliedIndex("no base index for \"" + render(shape) + "\"");
    }
    base_nodes_.emplace(std::make_pair(block, polarity), node);
    return node;
  }

  std::size_t subproduct(std::size_t i, std::size_t j, Polarity polarity) {
    if (auto it = sub_.find({i, j, polarity}); it != sub_.end()) return it->second;
    std::size_t child;
    if (i == j) {
      child = base_node(i, polarity);
    } else {
      child = bound_of(i, j);
      if (polarity == Polarity::NotEquals) child = add(NegationStep{}, {child});
    }
    const auto node = push(steps_[child].value, {child},
                           SubproductStep{i + 1, j + 1, polarity, render(decomp_.blocks_word(i, j))});
    sub_.emplace(std::make_tuple(i, j, polarity), node);
    return node;
  }

  const BlockDecomposition& decomp_;
  const std::vector<FactorGroup>& factors_;
  const BaseIndexOracle& base_;
  std::vector<TraceStep> steps_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> interval_;
  std::map<std::pair<std::size_t, Polarity>, std::size_t> base_nodes_;
  std::map<std::tuple<std::size_t, std::size_t, Polarity>, std::size_t> sub_;
};

}  // namespace

BoundCertificate lemma_bound(const BlockDecomposition& decomp,
                             const std::vector<FactorGroup>& factors,
                             const BaseIndexOracle& base) {
  if (decomp.ell() == 0) throw std::invalid_argument("lemma_bound needs at least one block");
  for (std::size_t i = 1; i < decomp.blocks.size(); ++i)
    if (decomp.blocks[i].factor == decomp.blocks[i - 1].factor)
      throw AnnotationMismatch("adjacent blocks must belong to different factors");
  LemmaBuilder builder(decomp, factors, base);
  builder.bound_of(0, decomp.ell() - 1);
  BoundCertificate cert;
  cert.steps = builder.take_steps();
  cert.bound = cert.steps.back().value;
  return cert;
}

BoundCertificate theorem_bound(const GroupWord& w, std::size_t r,
                               const std::vector<FactorGroup>& factors,
                               const BaseIndexOracle& base) {
  if (r < 1) throw std::invalid_argument("theorem_bound needs r >= 1");
  if (factors.size() < 2) throw std::invalid_argument("theorem_bound needs at least two factors");
  const auto rewritten = change_of_variables(w, r, factors.size());
  const auto decomp = block_decompose(rewritten);
  TheoremStep theorem{render(w), render(rewritten), r, factors.size(), decomp.ell()};

  BoundCertificate cert;
  if (decomp.ell() == 0) {
    cert.steps.push_back({BoundValue(1), {}, ConstantStep{}});
  } else {
    cert = lemma_bound(decomp, factors, base);
  }
  const auto root = cert.steps.size() - 1;
  cert.steps.push_back({cert.steps[root].value, {root}, std::move(theorem)});
  cert.bound = cert.steps.back().value;
  return cert;
}

BoundCertificate theorem_bound(const GroupWord& w, std::size_t r,
                               const std::vector<FactorGroup>& factors) {
  return theorem_bound(w, r, factors, search_base_oracle());
}

}  // namespace ladderlab
