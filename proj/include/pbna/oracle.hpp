#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pbna/errors.hpp"
#include "pbna/field.hpp"
#include "pbna/netgraph.hpp"
#include "pbna/transfer.hpp"

namespace pbna {

// Exact brute-force ground truth at desk scale: transfer functions as sparse
// multivariate polynomials with GF(2) coefficients. Monomial coefficients of a
// single transfer function are all one (each path contributes one distinct
// monomial), so every identity the artifact checks is a coefficient-pattern
// test mod 2 and this representation is exact for it.

struct Monomial {
  // (pair id, exponent), sorted by pair id, exponents >= 1.
  std::vector<std::pair<int, int>> factors;

  auto operator<=>(const Monomial&) const = default;

  int exponent_of(int pair_id) const {
    for (auto [p, e] : factors)
      if (p == pair_id) return e;
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors.reserve(a.factors.size() + b.factors.size());
    auto ia = a.factors.begin(), ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
      if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first))
        r.factors.push_back(*ia++);
      else if (ia == a.factors.end() || ib->first < ia->first)
        r.factors.push_back(*ib++);
      else {
        r.factors.emplace_back(ia->first, ia->second + ib->second);
        ++ia, ++ib;
      }
    }
    return r;
  }
};

class SparsePoly {
 public:
  SparsePoly() = default;

  // Terms must end up sorted and duplicate-free; duplicates cancel mod 2.
  static SparsePoly from_terms(std::vector<Monomial> terms) {
    std::sort(terms.begin(), terms.end());
    std::vector<Monomial> kept;
    for (size_t i = 0; i < terms.size();) {
      size_t j = i;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2) kept.push_back(terms[i]);
      i = j;
    }
    SparsePoly p;
    p.terms_ = std::move(kept);
    return p;
  }

  const std::vector<Monomial>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

  // Characteristic 2: addition is the symmetric difference of term sets.
  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    std::vector<Monomial> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::set_symmetric_difference(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                  b.terms_.end(), std::back_inserter(out));
    SparsePoly r;
    r.terms_ = std::move(out);
    return r;
  }

  static SparsePoly mul(const SparsePoly& a, const SparsePoly& b, size_t pair_cap) {
    if (a.terms_.size() * b.terms_.size() > pair_cap)
      throw scale_exceeded("oracle scale exceeded: product of " + std::to_string(a.terms_.size()) +
                           " x " + std::to_string(b.terms_.size()) + " terms is over the cap of " +
                           std::to_string(pair_cap));
    std::vector<Monomial> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) out.push_back(ta * tb);
    return from_terms(std::move(out));
  }

  // The coefficient polynomial of x^2 for the given pair variable.
  SparsePoly coeff_of_square(int pair_id) const {
    std::vector<Monomial> out;
    for (const auto& t : terms_) {
      if (t.exponent_of(pair_id) != 2) continue;
      Monomial m;
      for (auto [p, e] : t.factors)
        if (p != pair_id) m.factors.emplace_back(p, e);
      out.push_back(std::move(m));
    }
    return from_terms(std::move(out));
  }

  FieldElement eval(const Field& f, const CodingVector& cv) const {
    FieldElement acc = f.zero();
    for (const auto& t : terms_) {
      FieldElement prod = f.one();
      for (auto [p, e] : t.factors) prod = f.mul(prod, f.pow(cv.x[p], e));
      acc = Field::add(acc, prod);
    }
    return acc;
  }

 private:
  std::vector<Monomial> terms_;  // sorted, unique
};

inline constexpr size_t kDefaultOracleCap = 20000;

// One monomial t(P) per path P from s'_j to d'_i: the product of the
// consecutive-pair variables along P (degree |P| - 1). Distinct paths give
// distinct monomials. 1-based indices; `cap` bounds the path count.
inline std::vector<Monomial> enum_paths(const ExtendedNetwork& xn, int j, int i,
                                        size_t cap = kDefaultOracleCap) {
  std::vector<Monomial> out;
  const int target = xn.tau(i - 1);
  std::vector<int> vars;  // pair ids along the current path; ids ascend along it
  // Iterative DFS over edge adjacency, recording pair variables.
  struct Frame {
    int edge;
    size_t next = 0;
  };
  std::vector<std::vector<int>> pairs_out(xn.edge_count());
  for (size_t pid = 0; pid < xn.pairs().size(); ++pid)
    pairs_out[xn.pairs()[pid].up].push_back(static_cast<int>(pid));
  std::vector<Frame> stack{{xn.sigma(j - 1)}};
  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.edge == target) {
      if (out.size() >= cap)
        throw scale_exceeded("oracle scale exceeded: more than " + std::to_string(cap) +
                             " paths from s'_" + std::to_string(j) + " to d'_" + std::to_string(i));
      Monomial m;
      m.factors.reserve(vars.size());
      for (int v : vars) m.factors.emplace_back(v, 1);
      out.push_back(std::move(m));
      stack.pop_back();
      if (!vars.empty()) vars.pop_back();
      continue;
    }
    if (fr.next == pairs_out[fr.edge].size()) {
      stack.pop_back();
      if (!vars.empty()) vars.pop_back();
      continue;
    }
    const int pid = pairs_out[fr.edge][fr.next++];
    vars.push_back(pid);
    stack.push_back({xn.pairs()[pid].down});
  }
  return out;
}

// m_ij as an exact polynomial: the sum of all path monomials.
inline SparsePoly transfer_poly(const ExtendedNetwork& xn, int i, int j,
                                size_t cap = kDefaultOracleCap) {
  auto terms = enum_paths(xn, j, i, cap);
  SparsePoly p = SparsePoly::from_terms(std::move(terms));
  return p;
}

// Whether m_ab m_pq == m_aq m_pb exactly. By the disjoint-path lemma this is
// the negation of the flow test whenever all four path sets are nonempty.
inline bool product_identity_holds(const ExtendedNetwork& xn, int a, int b, int p, int q,
                                   size_t cap = kDefaultOracleCap) {
  if (a == p || b == q) throw param_error("product identity needs a != p and b != q");
  const SparsePoly lhs = SparsePoly::mul(transfer_poly(xn, a, b, cap), transfer_poly(xn, p, q, cap), cap);
  const SparsePoly rhs = SparsePoly::mul(transfer_poly(xn, a, q, cap), transfer_poly(xn, p, b, cap), cap);
  return lhs == rhs;
}

// The Square-Term Property: the coefficient of x^2_{e'e} in m_ab m_pq always
// equals its counterpart in m_aq m_pb. Exposed so the property suite can sweep
// every variable on every graph; any `false` is a build-breaking failure.
inline bool square_term_equal(const ExtendedNetwork& xn, int a, int b, int p, int q, int pair_var,
                              size_t cap = kDefaultOracleCap) {
  if (a == p || b == q) throw param_error("square-term test needs a != p and b != q");
  const SparsePoly lhs = SparsePoly::mul(transfer_poly(xn, a, b, cap), transfer_poly(xn, p, q, cap), cap);
  const SparsePoly rhs = SparsePoly::mul(transfer_poly(xn, a, q, cap), transfer_poly(xn, p, b, cap), cap);
  return lhs.coeff_of_square(pair_var) == rhs.coeff_of_square(pair_var);
}

// Cross-multiplied mixed-coefficient identities, one per session:
//   i=1: m11 m23 m32 + m21 m13 m32 + m31 m12 m23
//   i=2: m22 m31 m13 + m32 m21 m13 + m12 m23 m31
//   i=3: m33 m12 m21 + m13 m32 m21 + m23 m31 m12
// Each is the cleared-denominator form of the corresponding mixed feasibility
// condition, so evaluating it never divides by zero.
using TripleForm = std::array<std::array<std::pair<int, int>, 3>, 3>;

inline const TripleForm& mixed_triple_form(int i) {
  static const std::array<TripleForm, 3> kForms = {{
      {{{{{1, 1}, {2, 3}, {3, 2}}}, {{{2, 1}, {1, 3}, {3, 2}}}, {{{3, 1}, {1, 2}, {2, 3}}}}},
      {{{{{2, 2}, {3, 1}, {1, 3}}}, {{{3, 2}, {2, 1}, {1, 3}}}, {{{1, 2}, {2, 3}, {3, 1}}}}},
      {{{{{3, 3}, {1, 2}, {2, 1}}}, {{{1, 3}, {3, 2}, {2, 1}}}, {{{2, 3}, {3, 1}, {1, 2}}}}},
  }};
  if (i < 1 || i > 3) throw param_error("session index out of range");
  return kForms[i - 1];
}

// Whether the i-th mixed identity sums to the zero polynomial.
inline bool triple_identity_zero(const ExtendedNetwork& xn, int i, size_t cap = kDefaultOracleCap) {
  // Required entries: the i-th diagonal plus all six off-diagonals.
  for (int r = 1; r <= 3; ++r)
    for (int c = 1; c <= 3; ++c)
      if ((r != c || r == i) && !xn.pathset_nonempty(r, c)) throw zero_transfer(r, c);
  SparsePoly sum;
  for (const auto& term : mixed_triple_form(i)) {
    SparsePoly prod = transfer_poly(xn, term[0].first, term[0].second, cap);
    prod = SparsePoly::mul(prod, transfer_poly(xn, term[1].first, term[1].second, cap), cap);
    prod = SparsePoly::mul(prod, transfer_poly(xn, term[2].first, term[2].second, cap), cap);
    sum = sum + prod;
  }
  return sum.is_zero();
}

// eta is constant iff m31 m12 m23 == m21 m32 m13 exactly (all transfer-function
// monomials carry coefficient one, so a constant ratio forces equality).
inline bool eta_constant_exact(const ExtendedNetwork& xn, size_t cap = kDefaultOracleCap) {
  auto triple = [&](int i1, int j1, int i2, int j2, int i3, int j3) {
    SparsePoly p = transfer_poly(xn, i1, j1, cap);
    p = SparsePoly::mul(p, transfer_poly(xn, i2, j2, cap), cap);
    return SparsePoly::mul(p, transfer_poly(xn, i3, j3, cap), cap);
  };
  return triple(3, 1, 1, 2, 2, 3) == triple(2, 1, 3, 2, 1, 3);
}

}  // namespace pbna
