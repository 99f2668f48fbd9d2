#pragma once
// Exact Gaussian rationals Q[i] on top of GMP rationals.

#include <gmpxx.h>

#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace superorbit {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : re_(v), im_(0) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }
  static Scalar frac(long num, long den) { return Scalar(make_rational(num, den)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  Scalar operator-() const { return Scalar(-re_, -im_); }
  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    Rational n = re_ * re_ + im_ * im_;
    return Scalar(Rational(re_ / n), Rational(-im_ / n));
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // i^k for any integer k
  static Scalar i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return Scalar(1);
      case 1: return i();
      case 2: return Scalar(-1);
      default: return -i();
    }
  }

  // Textual form used by the expression printer: "3", "-1/2", "i", "-2*i", "(1/2+3*i)".
  std::string to_string() const {
    if (is_real()) return rational_to_string(re_);
    if (sgn(re_) == 0) {
      if (im_ == 1) return "i";
      if (im_ == -1) return "-i";
      return rational_to_string(im_) + "*i";
    }
    std::string s = "(" + rational_to_string(re_);
    s += sgn(im_) < 0 ? "-" : "+";
    Rational a = abs(im_);
    if (a != 1) s += rational_to_string(a) + "*";
    s += "i)";
    return s;
  }

 private:
  Rational re_;
  Rational im_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

inline Scalar sign_scalar(bool negative) { return negative ? Scalar(-1) : Scalar(1); }

}  // namespace superorbit
