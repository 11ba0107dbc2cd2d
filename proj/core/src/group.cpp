#include "ladderlab/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

std::string triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

}  // namespace

FactorGroup FactorGroup::from_table(
    FactorId id, std::string name,
    std::vector<std::vector<std::uint32_t>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw AxiomViolation("group table is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw AxiomViolation("table row " + std::to_string(i) + " has " +
                           std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i][j] >= n)
        throw AxiomViolation("closure fails: table[" + std::to_string(i) +
                             "][" + std::to_string(j) + "] = " +
                             std::to_string(rows[i][j]) + " is not an element");
  }

  FactorGroup g;
  g.id_ = id;
  g.name_ = std::move(name);
  g.order_ = static_cast<std::uint32_t>(n);
  g.table_.reserve(n * n);
  for (const auto& row : rows) g.table_.insert(g.table_.end(), row.begin(), row.end());

  std::optional<std::uint32_t> identity;
  for (std::uint32_t e = 0; e < n && !identity; ++e) {
    bool left = true;
    for (std::uint32_t x = 0; x < n && left; ++x) left = g.mul_index(e, x) == x;
    if (left) identity = e;
  }
  if (!identity) throw AxiomViolation("no left identity element in table");
  g.identity_ = *identity;
  for (std::uint32_t x = 0; x < n; ++x)
    if (g.mul_index(x, g.identity_) != x)
      throw AxiomViolation("element " + std::to_string(g.identity_) +
                           " is not a right identity for " + std::to_string(x));

  // Every row and column must be a permutation; that gives unique inverses.
  g.inverse_.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::vector<char> row_seen(n, 0), col_seen(n, 0);
    for (std::uint32_t y = 0; y < n; ++y) {
      auto r = g.mul_index(x, y);
      auto c = g.mul_index(y, x);
      if (row_seen[r]++)
        throw AxiomViolation("element " + std::to_string(x) +
                             " has no inverse: row repeats " + std::to_string(r));
      if (col_seen[c]++)
        throw AxiomViolation("element " + std::to_string(x) +
                             " has no inverse: column repeats " + std::to_string(c));
      if (r == g.identity_) g.inverse_[x] = y;
    }
  }

  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto ab = g.mul_index(a, b);
      for (std::uint32_t c = 0; c < n; ++c)
        if (g.mul_index(ab, c) != g.mul_index(a, g.mul_index(b, c)))
          throw AxiomViolation("associativity fails for " + triple(a, b, c));
    }
  return g;
}

FactorGroup FactorGroup::cyclic(FactorId id, std::uint32_t order) {
  if (order == 0) throw SpecParseError("cyclic group order must be >= 1");
  std::vector<std::vector<std::uint32_t>> rows(order, std::vector<std::uint32_t>(order));
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b) rows[a][b] = (a + b) % order;
  return from_table(id, "Z" + std::to_string(order), std::move(rows));
}

FactorGroup FactorGroup::from_permutations(
    FactorId id, std::string name,
    const std::vector<std::vector<std::uint32_t>>& generators) {
  using Perm = std::vector<std::uint32_t>;
  std::size_t degree = generators.empty() ? 0 : generators.front().size();
  for (const auto& gen : generators) {
    if (gen.size() != degree)
      throw SpecParseError("generators have different degrees");
    Perm sorted = gen;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < degree; ++i)
      if (sorted[i] != i)
        throw SpecParseError("generator is not a permutation of 0.." +
                             std::to_string(degree - 1));
  }

  Perm identity(degree);
  std::iota(identity.begin(), identity.end(), 0u);
  auto compose = [](const Perm& s, const Perm& t) {
    Perm out(t.size());
    for (std::size_t p = 0; p < t.size(); ++p) out[p] = s[t[p]];
    return out;
  };

  std::set<Perm> seen{identity};
  std::vector<Perm> frontier{identity};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& gen : generators) {
        Perm q = compose(gen, p);
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
    if (seen.size() > 100000)
      throw SpecParseError("permutation group is too large");
  }

  std::vector<Perm> elems(seen.begin(), seen.end());
  std::map<Perm, std::uint32_t> index;
  for (std::uint32_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  std::vector<std::vector<std::uint32_t>> rows(elems.size(),
                                               std::vector<std::uint32_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      rows[a][b] = index.at(compose(elems[a], elems[b]));
  return from_table(id, std::move(name), std::move(rows));
}

FactorGroup FactorGroup::infinite_stub(FactorId id, std::string name,
                                       std::map<std::string, SuppliedIndex> supplied) {
  FactorGroup g;
  g.id_ = id;
  g.name_ = std::move(name);
  g.infinite_ = true;
  g.supplied_ = std::move(supplied);
  return g;
}

std::uint32_t FactorGroup::order() const {
  require_finite("order");
  return order_;
}

void FactorGroup::require_finite(const char* op) const {
  if (infinite_)
    throw InfiniteFactor(std::string(op) + ": factor " + name_ +
                         " is a declared-infinite stub");
}

void FactorGroup::check_element(FactorElement g) const {
  if (g.factor != id_)
    throw FactorMismatch("element of factor " + std::to_string(g.factor.index) +
                         " used in factor " + std::to_string(id_.index));
  require_finite("element access");
  if (g.elem >= order_)
    throw InvalidElement("element " + std::to_string(g.elem) +
                         " out of range for factor " + name_ + " of order " +
                         std::to_string(order_));
}

FactorElement FactorGroup::mul(FactorElement g, FactorElement h) const {
  require_finite("mul");
  check_element(g);
  check_element(h);
  return {id_, mul_index(g.elem, h.elem)};
}

FactorElement FactorGroup::inv(FactorElement g) const {
  require_finite("inv");
  check_element(g);
  return {id_, inverse_[g.elem]};
}

std::vector<FactorElement> FactorGroup::elements() const {
  require_finite("elements");
  std::vector<FactorElement> out;
  out.reserve(order_);
  for (std::uint32_t i = 0; i < order_; ++i) out.push_back({id_, i});
  return out;
}

std::optional<SuppliedIndex> FactorGroup::supplied_index(const std::string& shape) const {
  if (auto it = supplied_.find(shape); it != supplied_.end()) return it->second;
  if (auto it = supplied_.find("*"); it != supplied_.end()) return it->second;
  return std::nullopt;
}

FactorGroup FactorGroup::with_id(FactorId id) const {
  FactorGroup g = *this;
  g.id_ = id;
  return g;
}

namespace {

template <class T>
T field(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key))
    throw SpecParseError(std::string("group spec is missing \"") + key + "\"");
  try {
    return spec.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError(std::string("group spec field \"") + key + "\": " + e.what());
  }
}

// Literal integers parse as signed, so accept any non-negative integer.
bool is_natural(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::map<std::string, SuppliedIndex> parse_supplied(const nlohmann::json& spec) {
  std::map<std::string, SuppliedIndex> out;
  if (!spec.contains("supplied_indices")) return out;
  const auto& doc = spec.at("supplied_indices");
  if (!doc.is_object()) throw SpecParseError("\"supplied_indices\" must be an object");
  for (const auto& [shape, value] : doc.items()) {
    SuppliedIndex idx;
    if (is_natural(value)) {
      idx.eq = value.get<std::uint64_t>();
    } else if (value.is_object() && value.contains("eq") &&
               is_natural(value.at("eq"))) {
      idx.eq = value.at("eq").get<std::uint64_t>();
      if (value.contains("neq")) {
        if (!is_natural(value.at("neq")))
          throw SpecParseError("supplied index \"" + shape + "\": neq must be a natural");
        idx.neq = value.at("neq").get<std::uint64_t>();
      }
    } else {
      throw SpecParseError("supplied index \"" + shape +
                           "\" must be a natural or {\"eq\":n,\"neq\":n}");
    }
    out.emplace(shape, idx);
  }
  return out;
}

}  // namespace

FactorGroup load_group(const nlohmann::json& spec, FactorId id) {
  if (!spec.is_object()) throw SpecParseError("group spec must be a JSON object");
  const auto kind = field<std::string>(spec, "kind");
  const auto name = spec.contains("name") ? field<std::string>(spec, "name")
                                          : "G" + std::to_string(id.index);
  auto check_order = [&](std::uint32_t actual) {
    if (spec.contains("order") && field<std::uint32_t>(spec, "order") != actual)
      throw SpecParseError("declared order " +
                           std::to_string(field<std::uint32_t>(spec, "order")) +
                           " does not match computed order " + std::to_string(actual));
  };

  if (kind == "cyclic") {
    const auto n = field<std::uint32_t>(spec, "order");
    if (n == 0) throw SpecParseError("cyclic group order must be >= 1");
    std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
    return FactorGroup::from_table(
        id, spec.contains("name") ? name : "Z" + std::to_string(n), std::move(rows));
  }
  if (kind == "table") {
    auto g = FactorGroup::from_table(
        id, name, field<std::vector<std::vector<std::uint32_t>>>(spec, "table"));
    check_order(g.order());
    return g;
  }
  if (kind == "perm-gens") {
    auto g = FactorGroup::from_permutations(
        id, name, field<std::vector<std::vector<std::uint32_t>>>(spec, "generators"));
    check_order(g.order());
    return g;
  }
  if (kind == "infinite-stub") {
    if (spec.contains("table"))
      throw SpecParseError("infinite-stub groups must not carry a table");
    return FactorGroup::infinite_stub(id, name, parse_supplied(spec));
  }
  throw SpecParseError("unknown group kind \"" + kind + "\"");
}

FactorGroup load_group_text(const std::string& text, FactorId id) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecParseError(std::string("group spec is not valid JSON: ") + e.what());
  }
  return load_group(doc, id);
}

FactorGroup load_group_file(const std::filesystem::path& path, FactorId id) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open group spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_group_text(buf.str(), id);
}

}  // namespace ladderlab
