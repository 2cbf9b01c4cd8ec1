#pragma once

#include <array>
#include <random>
#include <vector>

#include "pbna/field.hpp"
#include "pbna/netgraph.hpp"

namespace pbna {

// One assignment of all coding coefficients x_{e'e}, indexed by the extended
// network's adjacency-pair ids.
struct CodingVector {
  std::vector<FieldElement> x;
};

// Every coefficient drawn independently and uniformly from the whole field,
// zero included; excluding zero would change the error bound.
inline CodingVector sample_coding_vector(const ExtendedNetwork& xn, const Field& f,
                                         std::mt19937_64& rng) {
  CodingVector cv;
  cv.x.resize(xn.pairs().size());
  for (auto& v : cv.x) v = f.sample(rng);
  return cv;
}

// The evaluated 3x3 transfer matrix; entry (i,j) is m_ij at the given point.
// Zero entries are meaningful (no path, or cancellation at this point).
struct TransferMatrix {
  std::array<std::array<FieldElement, 3>, 3> m{};

  FieldElement at(int i, int j) const { return m[i - 1][j - 1]; }  // 1-based
};

// Forward propagation in topological edge order: each edge carries a length-3
// coefficient vector c_e; c_{sigma_j} is the j-th unit vector and
// c_e = sum over adjacent e' of x_{e'e} c_{e'}. Then m_ij = c_{tau_i}[j].
// Cost O(|E| D_in).
inline TransferMatrix eval_transfer_matrix(const ExtendedNetwork& xn, const Field& f,
                                           const CodingVector& cv) {
  std::vector<std::array<FieldElement, 3>> c(xn.edge_count());
  for (int j = 0; j < 3; ++j) c[xn.sigma(j)][j] = f.one();
  for (int e : xn.edges_in_order()) {
    auto& ce = c[e];
    for (int pid : xn.pairs_into(e)) {
      const auto& cu = c[xn.pairs()[pid].up];
      for (int j = 0; j < 3; ++j) ce[j] = Field::add(ce[j], f.mul(cv.x[pid], cu[j]));
    }
  }
  TransferMatrix tm;
  for (int i = 0; i < 3; ++i) tm.m[i] = c[xn.tau(i)];
  return tm;
}

// Value of p_i, q_i or eta at an evaluated point, e.g.
// p1 = m31 m12 / (m11 m32) and eta = m31 m12 m23 / (m21 m32 m13).
// A vanishing denominator is a resample event, not an answer.
inline FieldElement eval_ratio(const Field& f, RatioTag tag, const TransferMatrix& tm) {
  FieldElement num, den;
  if (tag == RatioTag::eta) {
    num = f.mul(f.mul(tm.at(3, 1), tm.at(1, 2)), tm.at(2, 3));
    den = f.mul(f.mul(tm.at(2, 1), tm.at(3, 2)), tm.at(1, 3));
  } else {
    const RatioQuad r = ratio_quad(tag);
    num = f.mul(tm.at(r.a, r.b), tm.at(r.p, r.q));
    den = f.mul(tm.at(r.a, r.q), tm.at(r.p, r.b));
  }
  if (den == f.zero()) throw resample_needed("ratio denominator vanished at sampled point");
  return f.mul(num, f.inv(den));
}

}  // namespace pbna
