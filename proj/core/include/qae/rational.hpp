#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qae {

// Raised when exact arithmetic would overflow int64 storage. The machine
// decoder treats this as an ill-formed program rather than a fatal error.
struct arithmetic_overflow : std::runtime_error {
  arithmetic_overflow() : std::runtime_error("exact arithmetic overflow") {}
};

namespace detail {
inline std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw arithmetic_overflow{};
  return static_cast<std::int64_t>(v);
}
}  // namespace detail

// Exact rational with int64 numerator/denominator, always in lowest terms,
// denominator positive.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_wide((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 g = gcd_wide(a, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rational r;
    r.num_ = detail::narrow(n);
    r.den_ = detail::narrow(d);
    return r;
  }
  static __int128 gcd_wide(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }
  void normalize() {
    if (den_ < 0) {
      num_ = detail::narrow(-(__int128)num_);
      den_ = detail::narrow(-(__int128)den_);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Gaussian rational a + b i with exact rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational{})
      : re_(re), im_(im) {}
  GaussianRational(std::int64_t re) : re_(re) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  GaussianRational conj() const { return {re_, -im_}; }
  // |z|^2, exact.
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  friend GaussianRational operator+(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussianRational operator-(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussianRational operator*(const GaussianRational& a,
                                    const GaussianRational& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianRational operator/(const GaussianRational& a,
                                    const GaussianRational& b) {
    Rational n2 = b.norm2();
    if (n2.is_zero())
      throw std::domain_error("GaussianRational: division by zero");
    GaussianRational num = a * b.conj();
    return {num.re_ / n2, num.im_ / n2};
  }
  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& b) {
    return *this = *this + b;
  }
  GaussianRational& operator-=(const GaussianRational& b) {
    return *this = *this - b;
  }
  GaussianRational& operator*=(const GaussianRational& b) {
    return *this = *this * b;
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

 private:
  Rational re_;
  Rational im_;
};

// Exact dyadic rational num * 2^-exp with num odd (or zero). Program weights
// 2^-l(p) and their sums live here so the Kraft bookkeeping is exact.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(std::int64_t num, int exp = 0) : num_(num), exp_(exp) { normalize(); }

  static Dyadic pow2(int e) {  // 2^e, e may be negative
    return e >= 0 ? Dyadic{detail::narrow((__int128)1 << e), 0}
                  : Dyadic{1, -e};
  }

  std::int64_t num() const { return num_; }
  int exp() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const { return std::ldexp(double(num_), -exp_); }
  Rational to_rational() const {
    if (exp_ > 62) throw arithmetic_overflow{};
    return Rational{num_, std::int64_t(1) << exp_};
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    __int128 n = ((__int128)a.num_ << (e - a.exp_)) +
                 ((__int128)b.num_ << (e - b.exp_));
    Dyadic r;
    r.num_ = detail::narrow(n);
    r.exp_ = e;
    r.normalize();
    return r;
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    Dyadic nb = b;
    nb.num_ = -nb.num_;
    return a + nb;
  }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    Dyadic r;
    r.num_ = detail::narrow((__int128)a.num_ * b.num_);
    r.exp_ = a.exp_ + b.exp_;
    r.normalize();
    return r;
  }
  Dyadic& operator+=(const Dyadic& b) { return *this = *this + b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num_ == b.num_ && a.exp_ == b.exp_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) {
    return (b - a).num_ > 0;
  }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) {
    return (b - a).num_ >= 0;
  }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return b <= a; }

  // "num/2^exp" form, e.g. "3/2^4"; "0" for zero.
  std::string str() const {
    if (num_ == 0) return "0";
    if (exp_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(exp_);
  }
  static Dyadic parse(const std::string& s);

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  std::int64_t num_ = 0;
  int exp_ = 0;
};

}  // namespace qae
