#include "ladderlab/free_product.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

constexpr std::string_view kDot = "\xC2\xB7";      // U+00B7
constexpr std::string_view kEpsilon = "\xCE\xB5";  // U+03B5

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

FreeProduct::FreeProduct(std::vector<FactorGroup> factors) {
  factors_.reserve(factors.size());
  for (std::uint32_t i = 0; i < factors.size(); ++i)
    factors_.push_back(factors[i].with_id(FactorId{i}));
}

const FactorGroup& FreeProduct::factor(FactorId id) const {
  if (id.index >= factors_.size())
    throw InvalidElement("unknown factor f" + std::to_string(id.index) + " (product has " +
                         std::to_string(factors_.size()) + " factors)");
  return factors_[id.index];
}

bool FreeProduct::all_finite() const {
  for (const auto& f : factors_)
    if (f.declared_infinite()) return false;
  return true;
}

void FreeProduct::push_letter(std::vector<Letter>& stack, FactorElement g) const {
  const auto& grp = factor(g.factor);
  if (grp.declared_infinite())
    throw InfiniteFactor("cannot reduce letters of infinite stub " + grp.name());
  if (g.elem >= grp.order())
    throw InvalidElement("element " + std::to_string(g.elem) + " out of range for factor f" +
                         std::to_string(g.factor.index));
  std::uint32_t elem = g.elem;
  if (!stack.empty() && stack.back().factor == g.factor) {
    elem = grp.mul_index(stack.back().elem, elem);
    stack.pop_back();
  }
  if (elem != grp.identity_index()) stack.push_back({g.factor, elem});
}

ReducedWord FreeProduct::reduce(std::span<const FactorElement> raw) const {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (const auto& g : raw) push_letter(stack, g);
  return ReducedWord(std::move(stack));
}

void FreeProduct::check_word(const ReducedWord& u) const {
  for (const auto& l : u.letters()) {
    if (l.factor.index >= factors_.size() || factors_[l.factor.index].declared_infinite() ||
        l.elem >= factors_[l.factor.index].order())
      throw ContextMismatch("reduced word does not belong to this free product");
  }
}

ReducedWord FreeProduct::concat(const ReducedWord& u, const ReducedWord& v) const {
  check_word(u);
  check_word(v);
  std::vector<Letter> stack = u.letters();
  for (const auto& l : v.letters()) push_letter(stack, {l.factor, l.elem});
  return ReducedWord(std::move(stack));
}

ReducedWord FreeProduct::invert(const ReducedWord& u) const {
  std::vector<Letter> out;
  out.reserve(u.length());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it)
    out.push_back({it->factor, factor(it->factor).inv_index(it->elem)});
  return ReducedWord(std::move(out));
}

ReducedWord FreeProduct::embed(FactorElement g) const {
  std::vector<Letter> stack;
  push_letter(stack, g);
  return ReducedWord(std::move(stack));
}

std::uint64_t FreeProduct::ball_size(std::size_t radius) const {
  // ending[f] = number of reduced words of the current length ending in f.
  std::vector<std::uint64_t> ending(factors_.size(), 0);
  std::uint64_t total = 1;
  for (std::size_t len = 1; len <= radius; ++len) {
    std::vector<std::uint64_t> next(factors_.size(), 0);
    std::uint64_t prev_total = 0;
    for (auto c : ending) prev_total = sat_add(prev_total, c);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const std::uint64_t letters =
          factors_[f].declared_infinite() ? std::numeric_limits<std::uint64_t>::max()
                                          : factors_[f].order() - 1;
      const std::uint64_t predecessors = len == 1 ? 1 : prev_total - ending[f];
      next[f] = sat_mul(letters, predecessors);
      total = sat_add(total, next[f]);
    }
    ending = std::move(next);
  }
  return total;
}

Ball FreeProduct::enumerate_ball(std::size_t radius, std::uint64_t cap) const {
  if (!all_finite() && radius > 0)
    throw InfiniteFactor("cannot enumerate a ball with an infinite factor");
  const auto predicted = ball_size(radius);
  if (predicted > cap)
    throw BallTooLarge("ball of radius " + std::to_string(radius) + " has " +
                       (predicted == std::numeric_limits<std::uint64_t>::max()
                            ? std::string("more than 2^64")
                            : std::to_string(predicted)) +
                       " members, above the cap of " + std::to_string(cap));
  Ball ball;
  ball.radius = radius;
  ball.members.reserve(predicted);
  ball.members.push_back(ReducedWord{});
  std::size_t layer_begin = 0, layer_end = 1;
  for (std::size_t len = 1; len <= radius; ++len) {
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const auto& base = ball.members[i].letters();
      for (std::uint32_t f = 0; f < factors_.size(); ++f) {
        if (!base.empty() && base.back().factor.index == f) continue;
        const auto& grp = factors_[f];
        for (std::uint32_t e = 0; e < grp.order(); ++e) {
          if (e == grp.identity_index()) continue;
          auto letters = base;
          letters.push_back({FactorId{f}, e});
          ball.members.push_back(ReducedWord(std::move(letters)));
        }
      }
    }
    layer_begin = layer_end;
    layer_end = ball.members.size();
  }
  return ball;
}

std::string FreeProduct::render(const ReducedWord& u) const {
  if (u.is_identity()) return std::string(kEpsilon);
  std::string out;
  for (std::size_t i = 0; i < u.length(); ++i) {
    if (i) out += kDot;
    out += "f" + std::to_string(u.letters()[i].factor.index) + ":" +
           std::to_string(u.letters()[i].elem);
  }
  return out;
}

std::vector<FactorElement> FreeProduct::parse_raw(std::string_view text) const {
  std::vector<FactorElement> out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) {
    throw InvalidElement(msg + " at position " + std::to_string(pos));
  };
  auto skip_separators = [&] {
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else if (text.substr(pos, kDot.size()) == kDot) {
        pos += kDot.size();
      } else {
        break;
      }
    }
  };
  auto read_number = [&](std::uint32_t& value) {
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) fail("expected a number");
    pos += static_cast<std::size_t>(ptr - first);
  };

  skip_separators();
  if (text.substr(pos, kEpsilon.size()) == kEpsilon) {
    pos += kEpsilon.size();
    skip_separators();
    if (pos != text.size()) fail("unexpected text after identity");
    return out;
  }
  while (pos < text.size()) {
    if (text[pos] != 'f') fail("expected 'f<factor>:<element>'");
    ++pos;
    std::uint32_t f = 0, e = 0;
    read_number(f);
    if (pos >= text.size() || text[pos] != ':') fail("expected ':'");
    ++pos;
    read_number(e);
    const auto& grp = factor(FactorId{f});
    if (!grp.declared_infinite() && e >= grp.order())
      fail("element " + std::to_string(e) + " out of range for factor f" + std::to_string(f));
    out.push_back({FactorId{f}, e});
    skip_separators();
  }
  return out;
}

}  // namespace ladderlab
