#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bundle {

// Exact rational on int64 with __int128 intermediates. Always stored
// reduced with positive denominator. Throws on overflow instead of
// silently wrapping; the magnitudes in this project stay far below the
// limits (denominators are powers of a grid base D <= 60 with exponent
// <= ~12).
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(std::int64_t n) : num_(n), den_(1) {}
  Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from128(n, d);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  bool is_integer() const { return den_ == 1; }

  // "num/den", integers printed without the denominator.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Decimal rendering with the given number of significant digits.
  std::string to_decimal(int significant = 12) const;

  static Rat parse(const std::string& text);

 private:
  static Rat from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rat r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a;
  }
  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("Rat: value exceeds 64-bit range");
    return (std::int64_t)v;
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace bundle
