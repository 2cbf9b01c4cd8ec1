#include "pbna/oracle.hpp"

#include <random>

#include "doctest.h"
#include "testutil.hpp"

using namespace pbna;

TEST_CASE("enum_paths") {
  SUBCASE("a single 3-edge extended path is one degree-2 monomial") {
    // sigma_1, e, tau_1 when s1 -> d1 directly.
    const Network net = testutil::disjoint_sessions();
    const auto paths = enum_paths(extend(net), 1, 1);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].factors.size() == 2);
  }
  SUBCASE("diamond routes give two distinct monomials") {
    const auto paths = enum_paths(extend(testutil::diamond()), 1, 1);
    REQUIRE(paths.size() == 2);
    CHECK_FALSE(paths[0] == paths[1]);
  }
  SUBCASE("unreachable pair gives the empty list") {
    CHECK(enum_paths(extend(testutil::disjoint_sessions()), 2, 1).empty());
  }
  SUBCASE("cap boundary raises a scale error") {
    CHECK_THROWS_AS(enum_paths(extend(testutil::diamond()), 1, 1, 1), scale_exceeded);
    CHECK_NOTHROW(enum_paths(extend(testutil::diamond()), 1, 1, 2));
  }
}

TEST_CASE("transfer_poly") {
  SUBCASE("term count equals path count") {
    std::mt19937_64 rng(555);
    for (int t = 0; t < 50; ++t) {
      const ExtendedNetwork xn = extend(testutil::random_dag(rng, 6, 8));
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          REQUIRE(transfer_poly(xn, i, j).term_count() == enum_paths(xn, j, i).size());
    }
  }
  SUBCASE("empty path set is the zero polynomial") {
    CHECK(transfer_poly(extend(testutil::disjoint_sessions()), 2, 1).is_zero());
  }
}

TEST_CASE("polynomial evaluation is a ring homomorphism") {
  const ExtendedNetwork xn = extend(testutil::two_relay());
  const Field f(16);
  std::mt19937_64 rng(8);
  const SparsePoly a = transfer_poly(xn, 1, 1);
  const SparsePoly b = transfer_poly(xn, 3, 2);
  for (int t = 0; t < 20; ++t) {
    const CodingVector cv = sample_coding_vector(xn, f, rng);
    REQUIRE(SparsePoly::mul(a, b, kDefaultOracleCap).eval(f, cv) ==
            f.mul(a.eval(f, cv), b.eval(f, cv)));
    REQUIRE((a + b).eval(f, cv) == Field::add(a.eval(f, cv), b.eval(f, cv)));
  }
}

TEST_CASE("product identities") {
  SUBCASE("shared bottleneck factorizes: identities hold") {
    const ExtendedNetwork xn = extend(testutil::shared_bottleneck());
    for (RatioTag t : {RatioTag::p1, RatioTag::p2, RatioTag::p3, RatioTag::q1, RatioTag::q2,
                       RatioTag::q3}) {
      const RatioQuad r = ratio_quad(t);
      CHECK(product_identity_holds(xn, r.a, r.b, r.p, r.q));
    }
  }
  SUBCASE("two disjoint session paths break the identity") {
    const ExtendedNetwork xn = extend(testutil::two_relay());
    const RatioQuad r = ratio_quad(RatioTag::p1);
    CHECK_FALSE(product_identity_holds(xn, r.a, r.b, r.p, r.q));
  }
}

TEST_CASE("disjoint-path lemma: flow test and polynomial test agree on random graphs") {
  std::mt19937_64 rng(31415);
  int compared = 0;
  while (compared < 400) {
    const ExtendedNetwork xn = extend(testutil::random_dag(rng, 5, 6));
    for (RatioTag t : {RatioTag::p1, RatioTag::p2, RatioTag::p3, RatioTag::q1, RatioTag::q2,
                       RatioTag::q3}) {
      const RatioQuad r = ratio_quad(t);
      const bool nonzero = xn.pathset_nonempty(r.a, r.b) && xn.pathset_nonempty(r.p, r.q) &&
                           xn.pathset_nonempty(r.a, r.q) && xn.pathset_nonempty(r.p, r.b);
      if (!nonzero) continue;
      REQUIRE(disjoint_pair_exists(xn, r.a, r.b, r.p, r.q) ==
              !product_identity_holds(xn, r.a, r.b, r.p, r.q));
      ++compared;
    }
  }
}

TEST_CASE("square-term property on a hand-built overlap graph") {
  // Two paths that share the consecutive edges shared1, shared2 in the middle:
  // the pair variable x_(shared1, shared2) appears in both paths, so its
  // square shows up in the product with a nonzero coefficient, and it must
  // match across the two products.
  const Network net = Network::build(
      {"s1", "s2", "m1", "m2", "m3", "d1", "d2", "s3", "d3"},
      {{"a1", "s1", "m1"},
       {"a2", "s2", "m1"},
       {"shared1", "m1", "m2"},
       {"shared2", "m2", "m3"},
       {"b1", "m3", "d1"},
       {"b2", "m3", "d2"},
       {"z", "s3", "d3"}},
      {{"s1", "d1"}, {"s2", "d2"}, {"s3", "d3"}});
  const ExtendedNetwork xn = extend(net);
  const SparsePoly prod =
      SparsePoly::mul(transfer_poly(xn, 1, 1), transfer_poly(xn, 2, 2), kDefaultOracleCap);
  bool found_nonzero = false;
  for (size_t var = 0; var < xn.pairs().size(); ++var) {
    CHECK(square_term_equal(xn, 1, 1, 2, 2, static_cast<int>(var)));
    if (!prod.coeff_of_square(static_cast<int>(var)).is_zero()) found_nonzero = true;
  }
  CHECK(found_nonzero);
}

TEST_CASE("square-term property sweeps clean on random graphs") {
  std::mt19937_64 rng(2718);
  for (int t = 0; t < 40; ++t) {
    const ExtendedNetwork xn = extend(testutil::random_dag(rng, 6, 8));
    for (int a = 1; a <= 3; ++a)
      for (int p = 1; p <= 3; ++p) {
        if (a == p) continue;
        for (int b = 1; b <= 3; ++b)
          for (int q = 1; q <= 3; ++q) {
            if (b == q) continue;
            for (size_t var = 0; var < xn.pairs().size(); ++var)
              REQUIRE(square_term_equal(xn, a, b, p, q, static_cast<int>(var)));
          }
      }
  }
}

TEST_CASE("triple identities") {
  SUBCASE("shared bottleneck: three equal terms sum to the term, nonzero") {
    const ExtendedNetwork xn = extend(testutil::shared_bottleneck());
    for (int i = 1; i <= 3; ++i) CHECK_FALSE(triple_identity_zero(xn, i));
  }
  SUBCASE("two-relay: nonzero for all i") {
    const ExtendedNetwork xn = extend(testutil::two_relay());
    for (int i = 1; i <= 3; ++i) CHECK_FALSE(triple_identity_zero(xn, i));
  }
  SUBCASE("empty off-diagonal path set routes to the classifier") {
    const ExtendedNetwork xn = extend(testutil::single_zero_feasible());
    CHECK_THROWS_AS(triple_identity_zero(xn, 1), zero_transfer);
  }
  SUBCASE("the crossing counter-example vanishes identically for session 1") {
    const ExtendedNetwork xn = extend(testutil::mixed_violated());
    CHECK(triple_identity_zero(xn, 1));
    CHECK_FALSE(triple_identity_zero(xn, 2));
    CHECK_FALSE(triple_identity_zero(xn, 3));
  }
}

TEST_CASE("a transfer polynomial is zero exactly when its path set is empty") {
  std::mt19937_64 rng(606);
  for (int t = 0; t < 60; ++t) {
    const ExtendedNetwork xn = extend(testutil::random_dag(rng, 5, 6));
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        REQUIRE(transfer_poly(xn, i, j).is_zero() == !xn.pathset_nonempty(i, j));
  }
}

TEST_CASE("eta constancy verdicts") {
  CHECK(eta_constant_exact(extend(testutil::shared_bottleneck())));
  CHECK(eta_constant_exact(extend(testutil::private_links())));
  CHECK_FALSE(eta_constant_exact(extend(testutil::two_relay())));
  CHECK_FALSE(eta_constant_exact(extend(testutil::diamond())));
}
