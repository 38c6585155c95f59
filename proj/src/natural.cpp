#include "bawb/natural.hpp"

#include <bit>

namespace bawb {

void Natural::assign(const BigInt& v) {
  if (v.sign() < 0) throw std::logic_error("Natural: negative value");
  if (v <= BigInt(UINT64_MAX)) {
    small_ = static_cast<std::uint64_t>(v);
    big_.reset();
    return;
  }
  small_ = 0;
  big_ = std::make_shared<const BigInt>(v);
}

Natural Natural::parse(const std::string& digits) {
  if (digits.empty()) throw std::invalid_argument("empty numeral");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("bad numeral: " + digits);
  return Natural(BigInt(digits));
}

Natural Natural::pow2(std::uint64_t k) {
  if (k > kMaxBits) throw DomainCapExceeded("power of two too large", "2^" + std::to_string(k));
  if (k < 64) return Natural(std::uint64_t{1} << k);
  BigInt r = 1;
  r <<= static_cast<unsigned>(k);
  return Natural(r);
}

std::uint64_t Natural::to_u64(const char* context) const {
  if (big_) throw DomainCapExceeded(std::string(context) + ": value exceeds machine word", to_string());
  return small_;
}

std::uint64_t Natural::bit_length() const {
  if (!big_) return small_ == 0 ? 0 : 64 - static_cast<std::uint64_t>(std::countl_zero(small_));
  return static_cast<std::uint64_t>(boost::multiprecision::msb(*big_)) + 1;
}

bool Natural::bit(std::uint64_t k) const {
  if (!big_) return k < 64 && ((small_ >> k) & 1u);
  return boost::multiprecision::bit_test(*big_, static_cast<unsigned>(k));
}

Natural Natural::shr(std::uint64_t k) const {
  if (!big_) return Natural(k >= 64 ? 0 : small_ >> k);
  if (k >= bit_length()) return Natural();
  return Natural(BigInt(*big_ >> static_cast<unsigned>(k)));
}

Natural Natural::shl(std::uint64_t k) const {
  if (is_zero()) return Natural();
  if (k > kMaxBits) throw DomainCapExceeded("shift too large", std::to_string(k));
  if (!big_ && k < 64 && (small_ >> (63 - k)) == 0) return Natural(small_ << k);
  return Natural(BigInt(big() << static_cast<unsigned>(k)));
}

Natural Natural::low_bits(std::uint64_t k) const {
  if (k >= bit_length()) return *this;
  if (!big_) return Natural(small_ & ((std::uint64_t{1} << k) - 1));
  BigInt mask = 1;
  mask <<= static_cast<unsigned>(k);
  mask -= 1;
  return Natural(BigInt(*big_ & mask));
}

Natural Natural::isqrt() const {
  if (!big_) {
    std::uint64_t r = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(small_)));
    while (r > 0 && (unsigned __int128)r * r > small_) --r;
    while ((unsigned __int128)(r + 1) * (r + 1) <= small_) ++r;
    return Natural(r);
  }
  return Natural(BigInt(boost::multiprecision::sqrt(*big_)));
}

Natural floor_div(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) return Natural(a.small() / b.small());
  return Natural(BigInt(a.big() / b.big()));
}

std::string Natural::to_string() const { return big_ ? big_->str() : std::to_string(small_); }

}  // namespace bawb
