#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "pbna/errors.hpp"

namespace pbna {

// One element of GF(2^m): an m-bit value read as a polynomial over GF(2).
// Addition is XOR, so every element is its own additive inverse.
struct FieldElement {
  uint32_t bits = 0;

  friend constexpr bool operator==(FieldElement a, FieldElement b) { return a.bits == b.bits; }
  friend constexpr bool operator!=(FieldElement a, FieldElement b) { return a.bits != b.bits; }
  friend constexpr bool operator<(FieldElement a, FieldElement b) { return a.bits < b.bits; }
};

// Polynomials over GF(2) packed into bit strings (bit k = coefficient of x^k).
namespace gf2x {

inline int degree(uint64_t p) { return p == 0 ? -1 : 63 - __builtin_clzll(p); }

inline uint64_t mod(uint64_t a, uint64_t m) {
  const int dm = degree(m);
  for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
  return a;
}

// Trial division against every polynomial of degree 1..deg/2.
inline bool is_irreducible(uint64_t poly, unsigned deg) {
  if (degree(poly) != static_cast<int>(deg)) return false;
  for (unsigned d = 1; d <= deg / 2; ++d)
    for (uint64_t div = 1ull << d; div < (2ull << d); ++div)
      if (mod(poly, div) == 0) return false;
  return true;
}

}  // namespace gf2x

// Arithmetic context for GF(2^m), 2 <= m <= 32. Elements are reduced modulo an
// irreducible polynomial of degree m. Immutable; safe to share across threads.
class Field {
 public:
  static constexpr unsigned kMinDegree = 2;
  static constexpr unsigned kMaxDegree = 32;

  // Default modulus: the numerically least irreducible polynomial of degree m,
  // so every result is reproducible bit for bit.
  explicit Field(unsigned m) : Field(m, default_modulus(m)) {}

  Field(unsigned m, uint64_t reduction_poly) : m_(m), mod_(reduction_poly) {
    check_degree(m);
    if (gf2x::degree(reduction_poly) != static_cast<int>(m))
      throw param_error("reduction polynomial must have degree m = " + std::to_string(m));
    if (!gf2x::is_irreducible(reduction_poly, m))
      throw param_error("reduction polynomial is reducible");
  }

  unsigned m() const { return m_; }
  uint64_t modulus() const { return mod_; }
  uint64_t order() const { return 1ull << m_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }

  FieldElement element(uint64_t bits) const {
    if (bits >> m_) throw param_error("value does not fit in GF(2^" + std::to_string(m_) + ")");
    return {static_cast<uint32_t>(bits)};
  }

  // Addition doubles as subtraction in characteristic 2.
  static FieldElement add(FieldElement a, FieldElement b) { return {a.bits ^ b.bits}; }

  // Carry-less shift-and-add with interleaved modular reduction.
  FieldElement mul(FieldElement a, FieldElement b) const {
    uint64_t acc = 0;
    uint64_t x = a.bits;
    uint64_t y = b.bits;
    while (y) {
      if (y & 1) acc ^= x;
      y >>= 1;
      x <<= 1;
      if (x & (1ull << m_)) x ^= mod_;
    }
    return {static_cast<uint32_t>(acc)};
  }

  FieldElement pow(FieldElement a, uint64_t e) const {
    FieldElement r = one();
    FieldElement base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  FieldElement inv(FieldElement a) const {
    if (a.bits == 0) throw std::domain_error("division by zero in GF(2^m)");
    return pow(a, order() - 2);
  }

  // Uniform over all 2^m elements, zero included. Draws raw mt19937_64 bits so
  // the value stream is identical on every platform.
  FieldElement sample(std::mt19937_64& rng) const {
    return {static_cast<uint32_t>(rng() & (order() - 1))};
  }

  static uint64_t default_modulus(unsigned m) {
    check_degree(m);
    // Candidates need the constant bit set, else x divides them. The scan is
    // a few milliseconds even at m = 32, so no cache (fields stay freely
    // constructible from any thread).
    for (uint64_t p = (1ull << m) | 1;; p += 2)
      if (gf2x::is_irreducible(p, m)) return p;
  }

 private:
  static void check_degree(unsigned m) {
    if (m < kMinDegree || m > kMaxDegree)
      throw param_error("field degree m must be in [2, 32], got " + std::to_string(m));
  }

  unsigned m_;
  uint64_t mod_;
};

}  // namespace pbna
