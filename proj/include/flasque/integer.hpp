#pragma once

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t are stored inline; anything larger is promoted
// to a heap-allocated GMP integer and demoted again as soon as it fits.

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flasque {

class Integer {
 public:
  Integer() = default;
  Integer(int v) : small_(v) {}                       // NOLINT
  Integer(long v) : small_(v) {}                      // NOLINT
  Integer(long long v) : small_(v) {}                 // NOLINT
  Integer(unsigned v) : small_(v) {}                  // NOLINT
  Integer(unsigned long v) { assign_unsigned(v); }    // NOLINT
  Integer(unsigned long long v) { assign_unsigned(v); }  // NOLINT
  explicit Integer(const mpz_class& v) { assign_big(v); }
  explicit Integer(std::string_view text) {
    mpz_class v;
    if (v.set_str(std::string(text), 10) != 0)
      throw std::invalid_argument("not an integer: " + std::string(text));
    assign_big(v);
  }

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this == &o) return *this;
    small_ = o.small_;
    if (o.big_) {
      if (big_) *big_ = *o.big_;
      else big_ = std::make_unique<mpz_class>(*o.big_);
    } else {
      big_.reset();
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] bool is_zero() const { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const { return !big_ && small_ == 1; }
  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }
  [[nodiscard]] bool fits_int64() const { return !big_; }
  [[nodiscard]] int64_t to_int64() const {
    if (big_) throw std::overflow_error("Integer does not fit in int64");
    return small_;
  }
  [[nodiscard]] mpz_class to_mpz() const {
    if (big_) return *big_;
    mpz_class r;
    set_mpz(r, small_);
    return r;
  }
  [[nodiscard]] std::string str() const {
    if (big_) return big_->get_str();
    return std::to_string(small_);
  }

  friend Integer operator-(const Integer& a) {
    if (a.is_small() && a.small_ != INT64_MIN) return Integer(-a.small_);
    return Integer(mpz_class(-a.to_mpz()));
  }
  friend Integer operator+(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Integer(r);
    }
    return Integer(mpz_class(a.to_mpz() + b.to_mpz()));
  }
  friend Integer operator-(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_sub_overflow(a.small_, b.small_, &r)) return Integer(r);
    }
    return Integer(mpz_class(a.to_mpz() - b.to_mpz()));
  }
  friend Integer operator*(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) {
      long long r;
      if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer(r);
    }
    return Integer(mpz_class(a.to_mpz() * b.to_mpz()));
  }
  // Truncating division, as for built-in integers.
  friend Integer operator/(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("Integer division by zero");
    if (a.is_small() && b.is_small() && !(a.small_ == INT64_MIN && b.small_ == -1))
      return Integer(a.small_ / b.small_);
    mpz_class q;
    mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(q);
  }
  friend Integer operator%(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("Integer division by zero");
    if (a.is_small() && b.is_small()) {
      if (b.small_ == -1) return Integer(0);
      return Integer(a.small_ % b.small_);
    }
    mpz_class r;
    mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Integer(r);
  }

  Integer& operator+=(const Integer& b) {
    if (is_small() && b.is_small()) {
      long long r;
      if (!__builtin_add_overflow(small_, b.small_, &r)) {
        small_ = r;
        return *this;
      }
    }
    return *this = *this + b;
  }
  Integer& operator-=(const Integer& b) {
    if (is_small() && b.is_small()) {
      long long r;
      if (!__builtin_sub_overflow(small_, b.small_, &r)) {
        small_ = r;
        return *this;
      }
    }
    return *this = *this - b;
  }
  Integer& operator*=(const Integer& b) { return *this = *this * b; }
  Integer& operator/=(const Integer& b) { return *this = *this / b; }
  Integer& operator%=(const Integer& b) { return *this = *this % b; }

  // this -= q * b, the workhorse of every elimination loop.
  void submul(const Integer& q, const Integer& b) {
    if (is_small() && q.is_small() && b.is_small()) {
      long long p, r;
      if (!__builtin_mul_overflow(q.small_, b.small_, &p) &&
          !__builtin_sub_overflow(small_, p, &r)) {
        small_ = r;
        return;
      }
    }
    *this = Integer(mpz_class(to_mpz() - q.to_mpz() * b.to_mpz()));
  }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) return a.small_ == b.small_;
    if (a.is_small() != b.is_small()) return false;  // normalized representation
    return *a.big_ == *b.big_;
  }
  friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
  friend int compare(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) return (a.small_ > b.small_) - (a.small_ < b.small_);
    return cmp(a.to_mpz(), b.to_mpz());
  }
  friend bool operator<(const Integer& a, const Integer& b) { return compare(a, b) < 0; }
  friend bool operator>(const Integer& a, const Integer& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Integer& a, const Integer& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Integer& a, const Integer& b) { return compare(a, b) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

  [[nodiscard]] size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    return std::hash<int64_t>{}(small_);
  }

 private:
  static void set_mpz(mpz_class& out, int64_t v) {
    static_assert(sizeof(long) == sizeof(int64_t), "LP64 platform expected");
    out = static_cast<long>(v);
  }
  void assign_unsigned(unsigned long long v) {
    if (v <= static_cast<unsigned long long>(INT64_MAX)) {
      small_ = static_cast<int64_t>(v);
    } else {
      assign_big(mpz_class(std::to_string(v)));
    }
  }
  void assign_big(const mpz_class& v) {
    if (v.fits_slong_p()) {
      small_ = v.get_si();
      big_.reset();
    } else {
      small_ = 0;
      big_ = std::make_unique<mpz_class>(v);
    }
  }

  int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

inline Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

// Floor division and the matching non-negative remainder for positive divisors.
inline Integer div_floor(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(q * b == a) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}
inline Integer mod_floor(const Integer& a, const Integer& b) { return a - b * div_floor(a, b); }

// Quotient rounding to nearest, used to keep remainders small during reduction.
inline Integer div_round(const Integer& a, const Integer& b) {
  Integer q = div_floor(a, b);
  Integer r = a - q * b;  // sign of b
  if (compare(abs(r + r), abs(b)) > 0) q += 1;  // r - b is smaller, whatever the sign of b
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    Integer x = abs(a), y = abs(b);
    if (x.is_small() && y.is_small()) {
      int64_t u = x.to_int64(), v = y.to_int64();
      while (v != 0) {
        int64_t t = u % v;
        u = v;
        v = t;
      }
      return Integer(u);
    }
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return abs(a / gcd(a, b) * b);
}

struct ExtendedGcd {
  Integer g, s, t;  // g = s*a + t*b, g >= 0
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!r1.is_zero()) {
    Integer q = div_floor(r0, r1);
    Integer r2 = r0 - q * r1;
    Integer s2 = s0 - q * s1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.sign() < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

}  // namespace flasque

template <>
struct std::hash<flasque::Integer> {
  size_t operator()(const flasque::Integer& v) const { return v.hash(); }
};
