#pragma once
// body * exp(exponent) with an even exponent that may be non-nilpotent.
// The nilpotent part of the exponent is always folded into the body, so two
// twisted elements are equal iff bodies and exponents agree term by term.

#include <string>

#include "element.hpp"

namespace superorbit {

class TwistedElement {
 public:
  TwistedElement() = default;
  explicit TwistedElement(SuperElement body) : body_(std::move(body)), exponent_(body_.algebra()) {}
  TwistedElement(SuperElement body, const SuperElement& exponent) : body_(std::move(body)) {
    if (!same_algebra(body_.algebra(), exponent.algebra())) throw Error("twisted element: algebra mismatch");
    if (!exponent.is_even()) throw Error("twisted element: exponent must be even");
    SuperElement nil(body_.algebra());
    exponent_ = SuperElement(body_.algebra());
    for (const auto& [m, c] : exponent.terms()) {
      if (body_.algebra()->nilpotent(m)) nil.add_term(m, c);
      else exponent_.add_term(m, c);
    }
    if (!nil.is_zero()) body_ = body_ * nil.exp_nilpotent();
  }

  const SuperElement& body() const { return body_; }
  const SuperElement& exponent() const { return exponent_; }
  const AlgebraPtr& algebra() const { return body_.algebra(); }
  bool is_plain() const { return exponent_.is_zero(); }
  bool is_zero() const { return body_.is_zero(); }

  SuperElement to_plain() const {
    if (!is_plain()) throw Error("exponent is not nilpotent: " + exponent_.to_string());
    return body_;
  }

  friend TwistedElement operator*(const TwistedElement& a, const TwistedElement& b) {
    return TwistedElement(a.body_ * b.body_, a.exponent_ + b.exponent_);
  }
  friend TwistedElement operator*(const SuperElement& f, const TwistedElement& b) {
    return TwistedElement(f * b.body_, b.exponent_);
  }
  friend TwistedElement operator*(const TwistedElement& a, const SuperElement& f) {
    return TwistedElement(a.body_ * f, a.exponent_);
  }
  // Sums only make sense inside one exponent sector.
  friend TwistedElement operator+(const TwistedElement& a, const TwistedElement& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.exponent_ != b.exponent_) throw Error("sum of twisted elements with different exponents");
    return TwistedElement(a.body_ + b.body_, a.exponent_);
  }
  friend TwistedElement operator-(const TwistedElement& a, const TwistedElement& b) {
    return a + TwistedElement(-b.body_, b.exponent_);
  }
  friend bool operator==(const TwistedElement& a, const TwistedElement& b) {
    if (a.body_.is_zero() && b.body_.is_zero()) return true;
    return a.body_ == b.body_ && a.exponent_ == b.exponent_;
  }
  friend bool operator!=(const TwistedElement& a, const TwistedElement& b) { return !(a == b); }

  // d(phi e^E) = (d phi + (-1)^{|d||phi|} phi dE) e^E, phi split into parity parts.
  TwistedElement derivative(const std::string& name) const {
    Parity pd = algebra()->parity(name);
    SuperElement dE = exponent_.derivative(name);
    SuperElement out = body_.derivative(name);
    for (Parity p : {Parity::Even, Parity::Odd}) {
      SuperElement part = body_.part(p);
      if (part.is_zero()) continue;
      SuperElement t = part * dE;
      if (koszul_negative(pd, p)) out -= t;
      else out += t;
    }
    return TwistedElement(out, exponent_);
  }

  TwistedElement conjugate() const { return TwistedElement(body_.conjugate(), exponent_.conjugate()); }

  std::string to_string() const {
    if (is_plain()) return body_.to_string();
    return "(" + body_.to_string() + ")*exp(" + exponent_.to_string() + ")";
  }

 private:
  SuperElement body_;
  SuperElement exponent_;
};

}  // namespace superorbit
