#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bawb {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when a value grows past what the workbench is willing to materialize
/// (exponent or quantifier range beyond the configured cap).
class DomainCapExceeded : public std::runtime_error {
 public:
  DomainCapExceeded(const std::string& what, std::string offending)
      : std::runtime_error(what + " (offending value " + offending + ")"),
        offending_(std::move(offending)) {}

  const std::string& offending() const noexcept { return offending_; }

 private:
  std::string offending_;
};

/// Exact nonnegative integer. Values below 2^64 stay in a machine word; larger
/// values spill into a shared immutable cpp_int.
class Natural {
 public:
  /// Largest exponent accepted by shifts and powers of two.
  static constexpr std::uint64_t kMaxBits = 1u << 20;

  Natural() = default;
  Natural(std::uint64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Natural(const BigInt& v) { assign(v); }

  static Natural parse(const std::string& digits);
  static Natural pow2(std::uint64_t k);

  bool is_small() const noexcept { return !big_; }
  std::uint64_t small() const noexcept { return small_; }
  BigInt big() const { return big_ ? *big_ : BigInt(small_); }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }

  /// Value as a machine word; throws DomainCapExceeded when it does not fit.
  std::uint64_t to_u64(const char* context) const;

  /// Binary length |x| (0 for x = 0).
  std::uint64_t bit_length() const;
  bool bit(std::uint64_t k) const;

  Natural half() const { return shr(1); }
  Natural shr(std::uint64_t k) const;
  Natural shl(std::uint64_t k) const;
  /// x mod 2^k
  Natural low_bits(std::uint64_t k) const;
  /// floor(sqrt(x))
  Natural isqrt() const;

  friend Natural operator+(const Natural& a, const Natural& b) {
    if (!a.big_ && !b.big_) {
      std::uint64_t r;
      if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Natural(r);
    }
    return Natural(a.big() + b.big());
  }
  friend Natural operator*(const Natural& a, const Natural& b) {
    if (!a.big_ && !b.big_) {
      std::uint64_t r;
      if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Natural(r);
    }
    return Natural(a.big() * b.big());
  }
  /// Truncated subtraction x ∸ y.
  friend Natural monus(const Natural& a, const Natural& b) {
    if (!a.big_ && !b.big_) return Natural(a.small_ >= b.small_ ? a.small_ - b.small_ : 0);
    if (a <= b) return Natural();
    return Natural(a.big() - b.big());
  }
  /// floor(a / b), b > 0
  friend Natural floor_div(const Natural& a, const Natural& b);

  friend bool operator==(const Natural& a, const Natural& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // normalized: a big value never fits in a word
  }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    if (!a.big_) return std::strong_ordering::less;
    if (!b.big_) return std::strong_ordering::greater;
    int c = a.big_->compare(*b.big_);
    return c < 0 ? std::strong_ordering::less
                 : (c == 0 ? std::strong_ordering::equal : std::strong_ordering::greater);
  }

  std::string to_string() const;

 private:
  void assign(const BigInt& v);

  std::uint64_t small_ = 0;
  std::shared_ptr<const BigInt> big_;
};

inline std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.to_string(); }

}  // namespace bawb
