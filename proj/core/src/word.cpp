#include "ladderlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "ladderlab/errors.hpp"

namespace ladderlab {

GroupWord::GroupWord(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {
  for (const auto& s : syllables_) {
    auto& arity = s.var.tuple == Tuple::X ? arity_x_ : arity_y_;
    arity = std::max(arity, s.var.position);
  }
}

GroupWord::GroupWord(std::vector<Syllable> syllables, std::uint32_t arity_x,
                     std::uint32_t arity_y)
    : GroupWord(std::move(syllables)) {
  *this = with_arity(arity_x, arity_y);
}

bool GroupWord::annotated() const {
  return !syllables_.empty() &&
         std::all_of(syllables_.begin(), syllables_.end(),
                     [](const Syllable& s) { return s.var.annotation.has_value(); });
}

GroupWord GroupWord::with_arity(std::uint32_t arity_x, std::uint32_t arity_y) const {
  GroupWord out(syllables_);
  if (out.arity_x_ > arity_x || out.arity_y_ > arity_y)
    throw ArityMismatch("word uses x" + std::to_string(out.arity_x_) + "/y" +
                        std::to_string(out.arity_y_) + " but arities are (" +
                        std::to_string(arity_x) + "," + std::to_string(arity_y) + ")");
  out.arity_x_ = arity_x;
  out.arity_y_ = arity_y;
  return out;
}

GroupWord GroupWord::formal_inverse() const {
  GroupWord out = *this;
  std::reverse(out.syllables_.begin(), out.syllables_.end());
  for (auto& s : out.syllables_) s.exponent = -s.exponent;
  return out;
}

GroupWord GroupWord::slice(std::size_t begin, std::size_t end) const {
  GroupWord out = *this;
  out.syllables_.assign(syllables_.begin() + static_cast<std::ptrdiff_t>(begin),
                        syllables_.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

GroupWord concat(const GroupWord& u, const GroupWord& v) {
  auto syl = u.syllables();
  syl.insert(syl.end(), v.syllables().begin(), v.syllables().end());
  return GroupWord(std::move(syl), std::max(u.arity_x(), v.arity_x()),
                   std::max(u.arity_y(), v.arity_y()));
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  GroupWord parse() {
    auto syllables = parse_word();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw WordParseError("unbalanced ')'", pos_);
      throw WordParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }
    return GroupWord(std::move(syllables));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_item_start() {
    skip_space();
    return pos_ < text_.size() && (text_[pos_] == 'x' || text_[pos_] == 'y' || text_[pos_] == '(');
  }

  std::vector<Syllable> parse_word() {
    std::vector<Syllable> out;
    while (at_item_start()) {
      auto item = parse_item();
      out.insert(out.end(), item.begin(), item.end());
    }
    return out;
  }

  std::vector<Syllable> parse_item() {
    std::vector<Syllable> atom;
    if (text_[pos_] == '(') {
      const auto open = pos_++;
      atom = parse_word();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw WordParseError("missing ')' for '(' opened at " + std::to_string(open), pos_);
      ++pos_;
    } else {
      atom.push_back({parse_var(), 1});
    }
    if (text_.substr(pos_, 1) == "^") {
      if (text_.substr(pos_, 3) != "^-1")
        throw WordParseError("only the exponent ^-1 is allowed", pos_);
      pos_ += 3;
      std::reverse(atom.begin(), atom.end());
      for (auto& s : atom) s.exponent = -s.exponent;
    }
    return atom;
  }

  std::uint32_t parse_digits(const char* what) {
    const auto start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > 1'000'000) throw WordParseError(std::string(what) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) throw WordParseError(std::string("expected ") + what, pos_);
    return static_cast<std::uint32_t>(value);
  }

  VariableSymbol parse_var() {
    VariableSymbol v;
    v.tuple = text_[pos_] == 'x' ? Tuple::X : Tuple::Y;
    ++pos_;
    const auto digits_at = pos_;
    v.position = parse_digits("variable position");
    if (v.position == 0) throw WordParseError("variable positions are 1-based", digits_at);
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      v.annotation = FactorId{parse_digits("factor annotation")};
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupWord parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string render(const GroupWord& w) {
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += s.var.tuple == Tuple::X ? 'x' : 'y';
    out += std::to_string(s.var.position);
    if (s.var.annotation) out += "@" + std::to_string(s.var.annotation->index);
    if (s.exponent < 0) out += "^-1";
  }
  return out;
}

ReducedWord evaluate(const FreeProduct& fp, const GroupWord& w,
                     std::span<const ReducedWord> a, std::span<const ReducedWord> b) {
  if (a.size() != w.arity_x() || b.size() != w.arity_y())
    throw ArityMismatch("word has arities (" + std::to_string(w.arity_x()) + "," +
                        std::to_string(w.arity_y()) + ") but got tuples of size (" +
                        std::to_string(a.size()) + "," + std::to_string(b.size()) + ")");
  std::vector<FactorElement> raw;
  for (const auto& s : w.syllables()) {
    const auto& value = (s.var.tuple == Tuple::X ? a : b)[s.var.position - 1];
    const auto& letters = value.letters();
    if (s.exponent > 0) {
      for (const auto& l : letters) raw.push_back({l.factor, l.elem});
    } else {
      for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        raw.push_back({it->factor, fp.factor(it->factor).inv_index(it->elem)});
    }
  }
  return fp.reduce(raw);
}

FactorElement evaluate_in_factor(const FactorGroup& group, const GroupWord& block,
                                 std::span<const FactorElement> a,
                                 std::span<const FactorElement> b) {
  if (block.empty()) throw AnnotationMismatch("a block must contain at least one syllable");
  if (a.size() < block.arity_x() || b.size() < block.arity_y())
    throw ArityMismatch("assignment is shorter than the block's arities");
  if (group.declared_infinite())
    throw InfiniteFactor("cannot evaluate in infinite stub " + group.name());
  std::uint32_t acc = group.identity_index();
  for (const auto& s : block.syllables()) {
    if (!s.var.annotation || *s.var.annotation != group.id())
      throw AnnotationMismatch("syllable is not attached to factor f" +
                               std::to_string(group.id().index));
    const auto& value = (s.var.tuple == Tuple::X ? a : b)[s.var.position - 1];
    if (value.factor != group.id() || value.elem >= group.order())
      throw AnnotationMismatch("assigned value does not lie in factor f" +
                               std::to_string(group.id().index));
    acc = group.mul_index(acc, s.exponent > 0 ? value.elem : group.inv_index(value.elem));
  }
  return {group.id(), acc};
}

std::vector<FactorId> template_factors(std::size_t r, std::size_t k) {
  std::vector<FactorId> slots;
  if (k == 2) {
    for (std::size_t s = 0; s <= r; ++s) slots.push_back(FactorId{static_cast<std::uint32_t>(s % 2)});
  } else {
    for (std::size_t rep = 0; rep < r; ++rep)
      for (std::uint32_t f = 0; f < k; ++f) slots.push_back(FactorId{f});
  }
  return slots;
}

GroupWord change_of_variables(const GroupWord& w, std::size_t r, std::size_t k) {
  if (r < 1 || k < 2)
    throw std::invalid_argument("change_of_variables needs r >= 1 and k >= 2");
  const auto slots = template_factors(r, k);
  const auto width = static_cast<std::uint32_t>(slots.size());
  std::vector<Syllable> out;
  out.reserve(w.size() * width);
  for (const auto& s : w.syllables()) {
    if (s.var.annotation)
      throw AnnotationMismatch("change_of_variables expects an unannotated word");
    std::vector<Syllable> expansion;
    for (std::uint32_t slot = 0; slot < width; ++slot) {
      VariableSymbol fresh{s.var.tuple, (s.var.position - 1) * width + slot + 1, slots[slot]};
      expansion.push_back({fresh, 1});
    }
    if (s.exponent < 0) {
      std::reverse(expansion.begin(), expansion.end());
      for (auto& e : expansion) e.exponent = -1;
    }
    out.insert(out.end(), expansion.begin(), expansion.end());
  }
  return GroupWord(std::move(out), w.arity_x() * width, w.arity_y() * width);
}

GroupWord BlockDecomposition::blocks_word(std::size_t first, std::size_t last) const {
  return word.slice(blocks.at(first).begin, blocks.at(last).end);
}

BlockDecomposition block_decompose(const GroupWord& annotated) {
  BlockDecomposition d;
  d.word = annotated;
  const auto& syl = annotated.syllables();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    if (!syl[i].var.annotation)
      throw UnannotatedSyllable("syllable " + std::to_string(i + 1) + " has no factor annotation");
    const auto f = *syl[i].var.annotation;
    if (d.blocks.empty() || d.blocks.back().factor != f)
      d.blocks.push_back({f, i, i + 1});
    else
      d.blocks.back().end = i + 1;
  }
  return d;
}

std::vector<FactorElement> interpret_in_template(const FreeProduct& fp, const ReducedWord& z,
                                                 std::size_t r, std::size_t k) {
  if (z.length() > r)
    throw LengthExceedsRadius("element of length " + std::to_string(z.length()) +
                              " does not fit a template of radius " + std::to_string(r));
  const auto slots = template_factors(r, k);
  std::vector<FactorElement> values;
  values.reserve(slots.size());
  for (auto f : slots) values.push_back(fp.factor(f).identity());
  std::size_t slot = 0;
  for (const auto& letter : z.letters()) {
    while (slot < slots.size() && slots[slot] != letter.factor) ++slot;
    if (slot == slots.size())
      throw LengthExceedsRadius("letter of factor f" + std::to_string(letter.factor.index) +
                                " has no free template slot");
    values[slot++] = {letter.factor, letter.elem};
  }
  return values;
}

std::vector<ReducedWord> expand_assignment(const FreeProduct& fp,
                                           std::span<const ReducedWord> values,
                                           std::size_t r) {
  std::vector<ReducedWord> out;
  for (const auto& z : values)
    for (const auto& g : interpret_in_template(fp, z, r, fp.num_factors()))
      out.push_back(fp.embed(g));
  return out;
}

GroupWord canonical_shape(const GroupWord& w) {
  std::map<std::uint32_t, std::uint32_t> xs, ys;
  std::vector<Syllable> out;
  out.reserve(w.size());
  for (const auto& s : w.syllables()) {
    auto& table = s.var.tuple == Tuple::X ? xs : ys;
    auto [it, inserted] = table.emplace(s.var.position, static_cast<std::uint32_t>(table.size() + 1));
    out.push_back({{s.var.tuple, it->second, std::nullopt}, s.exponent});
  }
  return GroupWord(std::move(out), static_cast<std::uint32_t>(xs.size()),
                   static_cast<std::uint32_t>(ys.size()));
}

}  // namespace ladderlab
