#include "ladderlab/ladder.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <thread>

#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

std::size_t popcount(std::span<const std::uint64_t> bits) {
  std::size_t n = 0;
  for (auto w : bits) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void check_cap(std::size_t rows, std::size_t cols, std::uint64_t cap) {
  const bool overflow = rows != 0 && cols > std::numeric_limits<std::uint64_t>::max() / rows;
  if (overflow || static_cast<std::uint64_t>(rows) * cols > cap)
    throw DomainTooLarge("search space of " + std::to_string(rows) + " x " + std::to_string(cols) +
                         " tuple pairs exceeds the cap of " + std::to_string(cap));
}

}  // namespace

Relation::Relation(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      row_words_(words_for(cols)),
      col_words_(words_for(rows)),
      row_bits_(rows * row_words_, 0),
      col_bits_(cols * col_words_, 0) {}

void Relation::set(std::size_t i, std::size_t j, bool value) {
  const std::uint64_t rbit = std::uint64_t{1} << (j % 64);
  const std::uint64_t cbit = std::uint64_t{1} << (i % 64);
  auto& r = row_bits_[i * row_words_ + j / 64];
  auto& c = col_bits_[j * col_words_ + i / 64];
  if (value) {
    r |= rbit;
    c |= cbit;
  } else {
    r &= ~rbit;
    c &= ~cbit;
  }
}

Relation Relation::negated() const {
  Relation out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, !holds(i, j));
  return out;
}

Relation operator|(const Relation& p, const Relation& q) {
  if (p.rows_ != q.rows_ || p.cols_ != q.cols_)
    throw ArityMismatch("relations over different tuple spaces");
  Relation out = p;
  for (std::size_t k = 0; k < out.row_bits_.size(); ++k) out.row_bits_[k] |= q.row_bits_[k];
  for (std::size_t k = 0; k < out.col_bits_.size(); ++k) out.col_bits_[k] |= q.col_bits_[k];
  return out;
}

Relation operator&(const Relation& p, const Relation& q) {
  if (p.rows_ != q.rows_ || p.cols_ != q.cols_)
    throw ArityMismatch("relations over different tuple spaces");
  Relation out = p;
  for (std::size_t k = 0; k < out.row_bits_.size(); ++k) out.row_bits_[k] &= q.row_bits_[k];
  for (std::size_t k = 0; k < out.col_bits_.size(); ++k) out.col_bits_[k] &= q.col_bits_[k];
  return out;
}

TupleSpace::TupleSpace(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
  for (auto r : radices_) {
    if (r != 0 && size_ > std::numeric_limits<std::size_t>::max() / r)
      size_ = std::numeric_limits<std::size_t>::max();
    else
      size_ *= r;
  }
}

std::vector<std::uint32_t> TupleSpace::decode(std::size_t index) const {
  std::vector<std::uint32_t> coords(radices_.size());
  for (std::size_t c = radices_.size(); c-- > 0;) {
    coords[c] = static_cast<std::uint32_t>(index % radices_[c]);
    index /= radices_[c];
  }
  return coords;
}

SearchDomain SearchDomain::ball(const FreeProduct& fp, std::size_t radius, std::uint64_t cap) {
  SearchDomain d;
  d.kind = DomainKind::FreeProductBall;
  d.radius = radius;
  d.values = fp.enumerate_ball(radius, cap).members;
  return d;
}

SearchDomain SearchDomain::whole_factor(const FreeProduct& fp, FactorId f) {
  SearchDomain d;
  d.kind = DomainKind::WholeFiniteFactor;
  d.factor = f;
  for (const auto& g : fp.factor(f).elements()) d.values.push_back(fp.embed(g));
  return d;
}

namespace {

template <class Eval>
Relation fill_relation(const TupleSpace& xs, const TupleSpace& ys, std::uint64_t cap, Eval&& eval) {
  check_cap(xs.size(), ys.size(), cap);
  Relation rel(xs.size(), ys.size());
  std::vector<std::vector<std::uint32_t>> ycoords(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) ycoords[j] = ys.decode(j);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto a = xs.decode(i);
    for (std::size_t j = 0; j < ys.size(); ++j)
      if (eval(a, ycoords[j])) rel.set(i, j, true);
  }
  return rel;
}

// Free-product evaluation of w where coordinate c takes values[c][index].
Relation relation_over(const FreeProduct& fp, const GroupWord& w,
                       const std::vector<std::vector<ReducedWord>>& xv,
                       const std::vector<std::vector<ReducedWord>>& yv, std::uint64_t cap) {
  std::vector<std::size_t> xr, yr;
  for (const auto& v : xv) xr.push_back(v.size());
  for (const auto& v : yv) yr.push_back(v.size());
  std::vector<ReducedWord> a(xv.size()), b(yv.size());
  return fill_relation(TupleSpace(xr), TupleSpace(yr), cap,
                       [&](const std::vector<std::uint32_t>& ai, const std::vector<std::uint32_t>& bj) {
                         for (std::size_t c = 0; c < ai.size(); ++c) a[c] = xv[c][ai[c]];
                         for (std::size_t c = 0; c < bj.size(); ++c) b[c] = yv[c][bj[c]];
                         return evaluate(fp, w, a, b).is_identity();
                       });
}

}  // namespace

Relation build_relation(const FreeProduct& fp, const GroupWord& w, const SearchDomain& domain,
                        std::uint64_t cap) {
  if (domain.values.empty()) throw DomainTooLarge("search domain is empty");
  std::vector<std::vector<ReducedWord>> xv(w.arity_x(), domain.values);
  std::vector<std::vector<ReducedWord>> yv(w.arity_y(), domain.values);
  return relation_over(fp, w, xv, yv, cap);
}

Relation build_annotated_relation(const FreeProduct& fp, const GroupWord& annotated,
                                  std::vector<std::vector<ReducedWord>>* x_values,
                                  std::vector<std::vector<ReducedWord>>* y_values,
                                  std::uint64_t cap) {
  std::vector<FactorId> xf(annotated.arity_x(), FactorId{0}), yf(annotated.arity_y(), FactorId{0});
  for (const auto& s : annotated.syllables()) {
    if (!s.var.annotation)
      throw UnannotatedSyllable("annotated relation needs every syllable annotated");
    (s.var.tuple == Tuple::X ? xf : yf)[s.var.position - 1] = *s.var.annotation;
  }
  auto values_for = [&](const std::vector<FactorId>& fs) {
    std::vector<std::vector<ReducedWord>> out;
    for (auto f : fs) {
      std::vector<ReducedWord> vals;
      for (const auto& g : fp.factor(f).elements()) vals.push_back(fp.embed(g));
      out.push_back(std::move(vals));
    }
    return out;
  };
  auto xv = values_for(xf);
  auto yv = values_for(yf);
  auto rel = relation_over(fp, annotated, xv, yv, cap);
  if (x_values) *x_values = std::move(xv);
  if (y_values) *y_values = std::move(yv);
  return rel;
}

Relation build_factor_relation(const FactorGroup& group, const GroupWord& w, std::uint64_t cap) {
  const std::size_t n = group.order();
  const auto& syl = w.syllables();
  return fill_relation(TupleSpace(w.arity_x(), n), TupleSpace(w.arity_y(), n), cap,
                       [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
                         std::uint32_t acc = group.identity_index();
                         for (const auto& s : syl) {
                           auto v = (s.var.tuple == Tuple::X ? a : b)[s.var.position - 1];
                           acc = group.mul_index(acc, s.exponent > 0 ? v : group.inv_index(v));
                         }
                         return acc == group.identity_index();
                       });
}

std::size_t exhaustive_cutoff(const Relation& rel) {
  return std::max<std::size_t>(1, std::min(rel.rows(), rel.cols())) + 1;
}

namespace {

// Depth-first ladder search below one fixed first x-row.
class LadderDfs {
 public:
  LadderDfs(const Relation& rel, std::size_t cutoff, std::atomic<std::size_t>& global_best)
      : rel_(rel), cutoff_(cutoff), global_best_(global_best) {
    const std::size_t levels = std::min(cutoff, std::max(rel.rows(), rel.cols()) + 1) + 1;
    a_sets_.assign(levels, std::vector<std::uint64_t>(words_for(rel.rows())));
    b_sets_.assign(levels, std::vector<std::uint64_t>(words_for(rel.cols())));
  }

  // Searches ladders whose first x-row is `first`.
  void run_from(std::size_t first) {
    first_ = first;
    auto& a0 = a_sets_[0];
    std::fill(a0.begin(), a0.end(), ~std::uint64_t{0});
    if (rel_.rows() % 64) a0.back() = (std::uint64_t{1} << (rel_.rows() % 64)) - 1;
    auto& b0 = b_sets_[0];
    std::fill(b0.begin(), b0.end(), ~std::uint64_t{0});
    if (rel_.cols() % 64) b0.back() = (std::uint64_t{1} << (rel_.cols() % 64)) - 1;
    path_.clear();
    extend(0);
  }

  std::size_t best() const { return best_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& best_path() const { return best_path_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool done() const { return best_ >= cutoff_; }

  // `depth` rows are placed; a_sets_[depth] holds admissible next x-rows,
  // b_sets_[depth] the y-rows satisfying the formula with every placed x-row.
  void extend(std::size_t depth) {
    const auto& allowed_a = a_sets_[depth];
    const auto& allowed_b = b_sets_[depth];
    for (std::size_t wa = 0; wa < allowed_a.size(); ++wa) {
      for (std::uint64_t abits = allowed_a[wa]; abits; abits &= abits - 1) {
        const std::size_t a = wa * 64 + static_cast<std::size_t>(std::countr_zero(abits));
        if (depth == 0 && a != first_) continue;
        auto& next_b = b_sets_[depth + 1];
        const auto row = rel_.row(a);
        bool any = false;
        for (std::size_t k = 0; k < next_b.size(); ++k) {
          next_b[k] = allowed_b[k] & row[k];
          any |= next_b[k] != 0;
        }
        if (!any) continue;
        const std::size_t b_left = popcount(next_b);
        for (std::size_t wb = 0; wb < next_b.size(); ++wb) {
          for (std::uint64_t bbits = next_b[wb]; bbits; bbits &= bbits - 1) {
            const std::size_t b = wb * 64 + static_cast<std::size_t>(std::countr_zero(bbits));
            ++nodes_;
            path_.emplace_back(a, b);
            const std::size_t length = depth + 1;
            if (length > best_) {
              best_ = length;
              best_path_ = path_;
              auto seen = global_best_.load();
              while (seen < length && !global_best_.compare_exchange_weak(seen, length)) {
              }
            }
            if (done()) return;
            if (length < cutoff_ && depth + 2 < a_sets_.size()) {
              auto& next_a = a_sets_[depth + 1];
              const auto col = rel_.col(b);
              for (std::size_t k = 0; k < next_a.size(); ++k) next_a[k] = allowed_a[k] & ~col[k];
              // Rows of a ladder are pairwise distinct, so the remaining
              // length is bounded by the admissible rows left on each side.
              const std::size_t bound = length + std::min(popcount(next_a), b_left - 1);
              if (bound > best_ && bound >= global_best_.load()) {
                extend(depth + 1);
                if (done()) return;
              }
            }
            path_.pop_back();
          }
        }
      }
    }
  }

  const Relation& rel_;
  std::size_t cutoff_;
  std::atomic<std::size_t>& global_best_;
  std::vector<std::vector<std::uint64_t>> a_sets_;
  std::vector<std::vector<std::uint64_t>> b_sets_;
  std::vector<std::pair<std::size_t, std::size_t>> path_;
  std::vector<std::pair<std::size_t, std::size_t>> best_path_;
  std::size_t first_ = 0;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

IndexResult search_ladder(const Relation& rel, const SearchOptions& options) {
  if (options.cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  check_cap(rel.rows(), rel.cols(), options.relation_cap);

  struct Record {
    std::size_t first = 0;
    std::size_t length = 0;
    std::vector<std::pair<std::size_t, std::size_t>> path;
  };
  std::atomic<std::size_t> next_first{0};
  std::atomic<std::size_t> global_best{0};
  std::atomic<std::size_t> cutoff_owner{std::numeric_limits<std::size_t>::max()};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex records_mutex;
  std::vector<Record> records;

  auto worker = [&] {
    LadderDfs dfs(rel, options.cutoff, global_best);
    std::size_t local_best = 0;
    std::uint64_t counted = 0;
    for (;;) {
      const std::size_t first = next_first.fetch_add(1);
      if (first >= rel.rows() || first > cutoff_owner.load()) break;
      dfs.run_from(first);
      if (dfs.best() > local_best) {
        local_best = dfs.best();
        std::lock_guard lock(records_mutex);
        records.push_back({first, dfs.best(), dfs.best_path()});
      }
      if (dfs.best() >= options.cutoff) {
        auto owner = cutoff_owner.load();
        while (first < owner && !cutoff_owner.compare_exchange_weak(owner, first)) {
        }
        nodes += dfs.nodes() - counted;
        break;
      }
      nodes += dfs.nodes() - counted;
      counted = dfs.nodes();
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  IndexResult result;
  result.nodes_explored = nodes.load();
  const Record* best = nullptr;
  for (const auto& r : records)
    if (!best || r.length > best->length || (r.length == best->length && r.first < best->first))
      best = &r;
  Ladder ladder;
  if (best) {
    ladder.m = best->length;
    for (auto [a, b] : best->path) {
      ladder.a_rows.push_back({static_cast<std::uint32_t>(a)});
      ladder.b_rows.push_back({static_cast<std::uint32_t>(b)});
    }
  }
  result.index = ladder.m;
  result.cutoff_hit = ladder.m >= options.cutoff;
  result.witness = std::move(ladder);
  return result;
}

bool is_ladder(const Relation& rel, std::span<const std::size_t> a_rows,
               std::span<const std::size_t> b_rows) {
  if (a_rows.size() != b_rows.size()) throw ArityMismatch("ladder needs as many x-rows as y-rows");
  for (std::size_t i = 0; i < a_rows.size(); ++i)
    for (std::size_t j = 0; j < b_rows.size(); ++j)
      if (rel.holds(a_rows[i], b_rows[j]) != (i <= j)) return false;
  return true;
}

bool is_ladder(const FreeProduct& fp, const GroupWord& w,
               std::span<const std::vector<ReducedWord>> a_rows,
               std::span<const std::vector<ReducedWord>> b_rows) {
  if (a_rows.size() != b_rows.size()) throw ArityMismatch("ladder needs as many x-rows as y-rows");
  for (std::size_t i = 0; i < a_rows.size(); ++i)
    for (std::size_t j = 0; j < b_rows.size(); ++j)
      if (evaluate(fp, w, a_rows[i], b_rows[j]).is_identity() != (i <= j)) return false;
  return true;
}

bool is_ladder(const FactorGroup& group, const GroupWord& block,
               std::span<const std::vector<FactorElement>> a_rows,
               std::span<const std::vector<FactorElement>> b_rows) {
  if (a_rows.size() != b_rows.size()) throw ArityMismatch("ladder needs as many x-rows as y-rows");
  for (const auto& row : a_rows)
    if (row.size() != block.arity_x()) throw ArityMismatch("x-row arity differs from the block");
  for (const auto& row : b_rows)
    if (row.size() != block.arity_y()) throw ArityMismatch("y-row arity differs from the block");
  for (std::size_t i = 0; i < a_rows.size(); ++i)
    for (std::size_t j = 0; j < b_rows.size(); ++j) {
      const bool one = evaluate_in_factor(group, block, a_rows[i], b_rows[j]).elem ==
                       group.identity_index();
      if (one != (i <= j)) return false;
    }
  return true;
}

namespace {

// Converts tuple indices of a witness into per-coordinate value indices.
Ladder decode_witness(const Ladder& raw, const TupleSpace& xs, const TupleSpace& ys) {
  Ladder out;
  out.m = raw.m;
  for (const auto& r : raw.a_rows) out.a_rows.push_back(xs.decode(r.front()));
  for (const auto& r : raw.b_rows) out.b_rows.push_back(ys.decode(r.front()));
  return out;
}

}  // namespace

IndexResult max_ladder(const FreeProduct& fp, const GroupWord& w, const SearchDomain& domain,
                       const SearchOptions& options) {
  const auto rel = build_relation(fp, w, domain, options.relation_cap);
  auto result = search_ladder(rel, options);
  if (result.witness)
    result.witness = decode_witness(*result.witness, TupleSpace(w.arity_x(), domain.values.size()),
                                    TupleSpace(w.arity_y(), domain.values.size()));
  return result;
}

IndexResult qf_stability_index(const FactorGroup& group, const GroupWord& block, bool negated,
                               const SearchOptions& options) {
  const auto shape = canonical_shape(block);
  if (group.declared_infinite()) {
    const auto key = render(shape);
    const auto supplied = group.supplied_index(key);
    if (!supplied || (negated && !supplied->neq))
      throw MissingSuppliedIndex("factor " + group.name() + " has no supplied " +
                                 (negated ? "not-equals " : "") + "index for \"" + key + "\"");
    IndexResult r;
    r.index = negated ? *supplied->neq : supplied->eq;
    return r;
  }
  auto rel = build_factor_relation(group, shape, options.relation_cap);
  if (negated) rel = rel.negated();
  auto result = search_ladder(rel, options);
  if (result.witness)
    result.witness = decode_witness(*result.witness, TupleSpace(shape.arity_x(), group.order()),
                                    TupleSpace(shape.arity_y(), group.order()));
  return result;
}

std::vector<std::vector<ReducedWord>> ladder_values(const std::vector<std::vector<std::uint32_t>>& rows,
                                                    const std::vector<ReducedWord>& values) {
  std::vector<std::vector<ReducedWord>> out;
  for (const auto& row : rows) {
    std::vector<ReducedWord> tuple;
    for (auto v : row) tuple.push_back(values.at(v));
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace ladderlab
