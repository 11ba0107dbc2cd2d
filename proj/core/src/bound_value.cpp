#include "ladderlab/bound_value.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

namespace ladderlab {

namespace {

const BigInt& exact_limit() {
  static const BigInt limit = BigInt(1) << BoundValue::kExactBits;
  return limit;
}

}  // namespace

std::size_t ceil_log2(const BigInt& v) {
  if (v <= 1) return 0;
  const std::size_t msb = boost::multiprecision::msb(v);
  const bool power_of_two = boost::multiprecision::lsb(v) == msb;
  return power_of_two ? msb : msb + 1;
}

BoundValue BoundValue::exact(BigInt v) {
  if (v < 0) throw std::invalid_argument("bound values are natural numbers");
  BoundValue b;
  b.top_ = std::move(v);
  b.normalize();
  return b;
}

BoundValue BoundValue::tower(std::size_t height, BigInt top) {
  if (top < 0) throw std::invalid_argument("bound values are natural numbers");
  BoundValue b;
  b.height_ = height;
  b.top_ = std::move(top);
  b.normalize();
  return b;
}

void BoundValue::normalize() {
  for (;;) {
    if (top_ >= exact_limit()) {
      // Round up: v <= 2^ceil_log2(v).
      top_ = BigInt(ceil_log2(top_));
      ++height_;
    } else if (height_ > 0 && top_ < kExactBits) {
      top_ = BigInt(1) << static_cast<unsigned>(top_);
      --height_;
    } else {
      return;
    }
  }
}

std::optional<std::uint64_t> BoundValue::to_u64() const {
  if (height_ != 0 || top_ > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(top_);
}

BoundValue BoundValue::successor() const { return tower(height_, top_ + 1); }

BoundValue BoundValue::times(const BigInt& c) const {
  if (c < 1) throw std::invalid_argument("times() needs a positive factor");
  if (height_ == 0) return exact(top_ * c);
  // c * 2^X <= 2^(X + log c), and raising the top by ceil_log2(c) raises X by
  // at least that much.
  return tower(height_, top_ + ceil_log2(c));
}

BoundValue BoundValue::pow2(const BoundValue& e) {
  if (e.height_ == 0) {
    if (e.top_ < kExactBits) return exact(BigInt(1) << static_cast<unsigned>(e.top_));
    return tower(1, e.top_);
  }
  return tower(e.height_ + 1, e.top_);
}

std::string BoundValue::to_string() const {
  std::string out = top_.str();
  for (std::size_t h = 0; h < height_; ++h) out = "2^(" + out + ")";
  return out;
}

BoundValue BoundValue::parse(std::string_view text) {
  std::size_t height = 0;
  while (text.starts_with("2^(")) {
    if (!text.ends_with(")")) throw std::invalid_argument("unbalanced tower notation");
    text = text.substr(3, text.size() - 4);
    ++height;
  }
  if (text.empty()) throw std::invalid_argument("empty bound value");
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bound value must be decimal or tower notation");
  return tower(height, BigInt(std::string(text)));
}

std::strong_ordering operator<=>(const BoundValue& a, const BoundValue& b) {
  if (a.height_ != b.height_) return a.height_ <=> b.height_;
  if (a.top_ < b.top_) return std::strong_ordering::less;
  if (a.top_ > b.top_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ladderlab
