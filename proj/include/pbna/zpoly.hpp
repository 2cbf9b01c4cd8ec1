#pragma once

#include <algorithm>
#include <vector>

#include "pbna/field.hpp"

namespace pbna {

// Univariate polynomial in z over GF(2^m). Trailing zero coefficients are
// trimmed; the zero polynomial has an empty coefficient list and degree -1.
class ZPoly {
 public:
  ZPoly() = default;

  static ZPoly constant(FieldElement c) { return from_coeffs({c}); }

  static ZPoly z(const Field& f) { return from_coeffs({f.zero(), f.one()}); }

  static ZPoly from_coeffs(std::vector<FieldElement> c) {
    while (!c.empty() && c.back() == FieldElement{0}) c.pop_back();
    ZPoly p;
    p.c_ = std::move(c);
    return p;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(size_t k) const { return k < c_.size() ? c_[k] : FieldElement{0}; }

  friend bool operator==(const ZPoly&, const ZPoly&) = default;

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {  // char 2: also subtraction
    std::vector<FieldElement> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) c[k] = Field::add(a.coeff(k), b.coeff(k));
    return from_coeffs(std::move(c));
  }

  static ZPoly mul(const Field& f, const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = Field::add(c[i + j], f.mul(a.c_[i], b.c_[j]));
    return from_coeffs(std::move(c));
  }

  static ZPoly scale(const Field& f, const ZPoly& a, FieldElement s) {
    std::vector<FieldElement> c(a.c_.size());
    for (size_t k = 0; k < c.size(); ++k) c[k] = f.mul(a.c_[k], s);
    return from_coeffs(std::move(c));
  }

  FieldElement eval(const Field& f, FieldElement x) const {  // Horner
    FieldElement acc = f.zero();
    for (size_t k = c_.size(); k-- > 0;) acc = Field::add(f.mul(acc, x), c_[k]);
    return acc;
  }

 private:
  std::vector<FieldElement> c_;
};

}  // namespace pbna
