#include "pbna/transfer.hpp"

#include <array>
#include <cmath>

#include "doctest.h"
#include "pbna/oracle.hpp"
#include "testutil.hpp"

using namespace pbna;

namespace {

// One path s1 -> a -> b -> d1 for session 1; sessions 2 and 3 ride disjoint
// segments so the graph is a valid three-session network.
Network single_path_net() {
  return Network::build(
      {"s1", "a", "b", "d1", "s2", "d2", "s3", "d3"},
      {{"e1", "s1", "a"}, {"e2", "a", "b"}, {"e3", "b", "d1"},
       {"f", "s2", "d2"}, {"g", "s3", "d3"}},
      {{"s1", "d1"}, {"s2", "d2"}, {"s3", "d3"}});
}

}  // namespace

TEST_CASE("sampling is deterministic and covers the pair domain") {
  const ExtendedNetwork xn = extend(testutil::two_relay());
  const Field f(16);
  std::mt19937_64 r1(99), r2(99);
  const CodingVector a = sample_coding_vector(xn, f, r1);
  const CodingVector b = sample_coding_vector(xn, f, r2);
  CHECK(a.x == b.x);
  CHECK(a.x.size() == xn.pairs().size());
}

TEST_CASE("domain size on a hand-built graph") {
  // 4 base edges: s1->a, a->d1 (session 1) and two disjoint session edges.
  const Network net = Network::build(
      {"s1", "a", "d1", "s2", "d2", "s3", "d3"},
      {{"e1", "s1", "a"}, {"e2", "a", "d1"}, {"f", "s2", "d2"}, {"g", "s3", "d3"}},
      {{"s1", "d1"}, {"s2", "d2"}, {"s3", "d3"}});
  const ExtendedNetwork xn = extend(net);
  // Pairs: (sigma1,e1),(e1,e2),(e2,tau1) + (sigma2,f),(f,tau2) + (sigma3,g),(g,tau3).
  CHECK(xn.pairs().size() == 7);
  const Field f(4);
  std::mt19937_64 rng(5);
  CHECK(sample_coding_vector(xn, f, rng).x.size() == 7);
}

TEST_CASE("sampled coefficients look uniform over GF(4)") {
  const ExtendedNetwork xn = extend(testutil::two_relay());
  const Field f(2);
  std::mt19937_64 rng(31337);
  std::array<long, 4> buckets{};
  long draws = 0;
  while (draws < 10000) {
    const CodingVector cv = sample_coding_vector(xn, f, rng);
    for (FieldElement v : cv.x) {
      if (draws >= 10000) break;
      ++buckets[v.bits];
      ++draws;
    }
  }
  const double expected = 10000.0 / 4.0;
  const double sigma = std::sqrt(10000.0 * 0.25 * 0.75);
  for (long b : buckets) CHECK(std::abs(b - expected) < 5.0 * sigma);
}

TEST_CASE("unique path evaluates to the product of its pair coefficients") {
  const ExtendedNetwork xn = extend(single_path_net());
  const Field f(16);
  CodingVector cv;
  cv.x.assign(xn.pairs().size(), f.one());

  SUBCASE("all ones make m_11 = 1") {
    const TransferMatrix tm = eval_transfer_matrix(xn, f, cv);
    CHECK(tm.at(1, 1) == f.one());
    CHECK(tm.at(1, 2) == f.zero());  // no path from s2 to d1
  }
  SUBCASE("two off-one coefficients multiply") {
    const int p1 = xn.pair_id(0, 1);  // (e1, e2)
    const int p2 = xn.pair_id(1, 2);  // (e2, e3)
    cv.x[p1] = f.element(0x1234);
    cv.x[p2] = f.element(0x0042);
    const TransferMatrix tm = eval_transfer_matrix(xn, f, cv);
    CHECK(tm.at(1, 1) == f.mul(f.element(0x1234), f.element(0x0042)));
  }
}

TEST_CASE("propagation equals oracle polynomial evaluation at random points") {
  std::mt19937_64 rng(4242);
  const Field f(16);
  for (int trial = 0; trial < 30; ++trial) {
    const ExtendedNetwork xn = extend(testutil::random_dag(rng, 6, trial < 15 ? 6 : 8));
    SparsePoly polys[3][3];
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) polys[i - 1][j - 1] = transfer_poly(xn, i, j);
    for (int rep = 0; rep < 100; ++rep) {
      const CodingVector cv = sample_coding_vector(xn, f, rng);
      const TransferMatrix tm = eval_transfer_matrix(xn, f, cv);
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          REQUIRE(polys[i - 1][j - 1].eval(f, cv) == tm.at(i, j));
    }
  }
}

TEST_CASE("each m_ij is affine in every single coefficient") {
  const ExtendedNetwork xn = extend(testutil::two_relay());
  const Field f(16);
  std::mt19937_64 rng(7);
  CodingVector cv = sample_coding_vector(xn, f, rng);
  // f affine in x: (f(a)+f(b))*(a+c) == (f(a)+f(c))*(a+b) for distinct a,b,c.
  const FieldElement a = f.element(3), b = f.element(0x55), c = f.element(0x1001);
  for (size_t var = 0; var < cv.x.size(); var += 5) {
    std::array<TransferMatrix, 3> tms;
    int k = 0;
    for (FieldElement v : {a, b, c}) {
      cv.x[var] = v;
      tms[k++] = eval_transfer_matrix(xn, f, cv);
    }
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        const FieldElement d_ab = Field::add(tms[0].at(i, j), tms[1].at(i, j));
        const FieldElement d_ac = Field::add(tms[0].at(i, j), tms[2].at(i, j));
        REQUIRE(f.mul(d_ab, Field::add(a, c)) == f.mul(d_ac, Field::add(a, b)));
      }
  }
}

TEST_CASE("ratio values") {
  const Field f(16);
  SUBCASE("all-ones matrix: every ratio is 1") {
    TransferMatrix tm;
    for (auto& row : tm.m)
      for (auto& v : row) v = f.one();
    for (RatioTag t : {RatioTag::p1, RatioTag::p2, RatioTag::p3, RatioTag::q1, RatioTag::q2,
                       RatioTag::q3, RatioTag::eta})
      CHECK(eval_ratio(f, t, tm) == f.one());
  }
  SUBCASE("p_i * q_i == eta at sampled nonzero points") {
    const ExtendedNetwork xn = extend(testutil::two_relay());
    std::mt19937_64 rng(11);
    int checked = 0;
    while (checked < 10) {
      const TransferMatrix tm = eval_transfer_matrix(xn, f, sample_coding_vector(xn, f, rng));
      try {
        const FieldElement eta = eval_ratio(f, RatioTag::eta, tm);
        for (int i = 1; i <= 3; ++i)
          REQUIRE(f.mul(eval_ratio(f, p_tag(i), tm), eval_ratio(f, q_tag(i), tm)) == eta);
        ++checked;
      } catch (const resample_needed&) {
        continue;
      }
    }
  }
  SUBCASE("zero denominator raises a resample signal") {
    TransferMatrix tm;  // all zero
    CHECK_THROWS_AS(eval_ratio(f, RatioTag::p1, tm), resample_needed);
  }
  SUBCASE("two-relay p1 is not 1: a witness point exists") {
    const ExtendedNetwork xn = extend(testutil::two_relay());
    const RatioQuad r = ratio_quad(RatioTag::p1);
    REQUIRE_FALSE(product_identity_holds(xn, r.a, r.b, r.p, r.q));  // p1 != 1 as polynomials
    std::mt19937_64 rng(3);
    bool witnessed = false;
    for (int tries = 0; tries < 64 && !witnessed; ++tries) {
      const TransferMatrix tm = eval_transfer_matrix(xn, f, sample_coding_vector(xn, f, rng));
      try {
        witnessed = eval_ratio(f, RatioTag::p1, tm) != f.one();
      } catch (const resample_needed&) {
      }
    }
    CHECK(witnessed);
  }
}
