#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbna/errors.hpp"
#include "pbna/field.hpp"
#include "pbna/netgraph.hpp"
#include "pbna/oracle.hpp"
#include "pbna/transfer.hpp"

namespace pbna {

// The decision engine: classify the regime, run the deterministic
// disjoint-path tests and the randomized polynomial identity tests for the
// reduced feasibility conditions, and assemble a report with certificates and
// an explicit error bound.

enum class Regime { general, eta_constant, zero_interference, degenerate };
enum class Method { maxflow, randomized, oracle };
enum class Verdict { holds, violated };
enum class OracleMode { automatic, force, off };

// Which member of the per-session condition family is tested. (a, b) selects
// the coefficient pair: (0,1) <-> p_i != 1, (1,0) <-> p_i != eta (tested as
// q_i != 1), (1,1) <-> the mixed condition (p_1 != eta/(1+eta); p_2, p_3 !=
// 1+eta). (0,0) is excluded: those coefficients cannot both vanish.
struct ConditionId {
  int i = 1;  // session, 1-based
  int a = 0, b = 0;
};

inline std::string condition_name(ConditionId id) {
  const std::string pi = "p" + std::to_string(id.i);
  if (id.a == 0 && id.b == 1) return pi + " != 1";
  if (id.a == 1 && id.b == 0) return pi + " != eta";
  if (id.a == 1 && id.b == 1) return id.i == 1 ? pi + " != eta/(1+eta)" : pi + " != 1+eta";
  throw param_error("invalid condition coefficients (a, b)");
}

struct WitnessPoint {
  int trial = 0;
  CodingVector point;
};

struct ConditionRecord {
  ConditionId id;
  std::string name;
  Method method = Method::maxflow;
  Verdict verdict = Verdict::violated;
  std::optional<PathPair> certificate;   // maxflow holds: a disjoint path pair
  std::optional<WitnessPoint> witness;   // randomized holds: a nonzero evaluation
  double error_contribution = 0.0;       // probability this verdict is wrong
};

struct FeasibilityParams {
  unsigned m = 16;
  int trials = 32;
  uint64_t seed = 0;
  int n = 2;
  OracleMode oracle = OracleMode::automatic;
  size_t cap = kDefaultOracleCap;
};

struct FeasibilityReport {
  Regime regime = Regime::general;
  bool feasible = false;
  std::optional<std::string> unsupported_pattern;  // set for unhandled zero patterns
  std::vector<ConditionRecord> conditions;
  // delta bounds one random evaluation wrongly vanishing; a full run of T zero
  // evaluations is wrong with probability at most delta^T. error_bound sums
  // delta^T over every probabilistic claim actually made by this report.
  double delta = 0.0;
  double per_condition_error = 0.0;
  double error_bound = 0.0;
  int L_dist = 0;
  int D_in = 0;
  FeasibilityParams params;
  std::vector<std::string> warnings;
  bool pathset[3][3] = {};                 // [i-1][j-1]: P_ij nonempty
  std::optional<Method> eta_method;        // how eta-constancy was decided
};

namespace detail {

// Per-trial seeds are derived from (seed, stream, trial) so the T trials are
// order-independent and reproducible. splitmix64 finalizer.
inline uint64_t mix_seed(uint64_t seed, uint64_t stream, uint64_t index) {
  uint64_t z = seed;
  for (uint64_t salt : {stream, index}) {
    z += 0x9E3779B97F4A7C15ull + salt;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z = z ^ (z >> 31);
  }
  return z;
}

inline uint64_t condition_stream(ConditionId id) { return 16 + id.i * 4 + id.a * 2 + id.b; }
constexpr uint64_t kEtaStream = 1;

// Value of the cross-multiplied mixed identity for session i at one point.
inline FieldElement mixed_value(const Field& f, const TransferMatrix& tm, int i) {
  FieldElement acc = f.zero();
  for (const auto& term : mixed_triple_form(i)) {
    FieldElement prod = f.one();
    for (auto [r, c] : term) prod = f.mul(prod, tm.at(r, c));
    acc = Field::add(acc, prod);
  }
  return acc;
}

}  // namespace detail

// Deterministic test of p_i != 1 (via the p_i quadruple) or p_i != eta (via
// q_i != 1, the q_i quadruple). The verdict follows the disjoint-path lemma:
// the products differ as polynomials iff a disjoint path pair exists.
inline ConditionRecord check_single_condition(const ExtendedNetwork& xn, ConditionId id) {
  if (id.a + id.b != 1) throw param_error("check_single_condition needs (a,b) in {(0,1),(1,0)}");
  const RatioQuad quad = ratio_quad(id.b == 1 ? p_tag(id.i) : q_tag(id.i));
  ConditionRecord rec{id, condition_name(id), Method::maxflow, Verdict::violated, {}, {}, 0.0};
  if (auto pair = find_disjoint_pair(xn, quad.a, quad.b, quad.p, quad.q)) {
    rec.verdict = Verdict::holds;
    rec.certificate = std::move(pair);
  }
  return rec;
}

// Randomized test of the mixed condition: evaluate the cross-multiplied
// polynomial at T independent points; any nonzero evaluation certifies
// "holds", T zero evaluations report "violated" with error at most delta^T.
inline ConditionRecord check_mixed_condition(const ExtendedNetwork& xn, const Field& f,
                                             ConditionId id, int trials, uint64_t seed,
                                             double delta) {
  if (id.a != 1 || id.b != 1) throw param_error("check_mixed_condition needs (a,b) == (1,1)");
  ConditionRecord rec{id, condition_name(id), Method::randomized, Verdict::violated, {}, {}, 0.0};
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(detail::mix_seed(seed, detail::condition_stream(id), t));
    CodingVector cv = sample_coding_vector(xn, f, rng);
    const TransferMatrix tm = eval_transfer_matrix(xn, f, cv);
    if (detail::mixed_value(f, tm, id.i) != f.zero()) {
      rec.verdict = Verdict::holds;
      rec.witness = WitnessPoint{t, std::move(cv)};
      return rec;  // a nonzero evaluation is a certificate; no error
    }
  }
  rec.error_contribution = std::pow(delta, trials);
  return rec;
}

struct RegimeDecision {
  Regime regime = Regime::general;
  std::optional<Method> eta_method;
  double error_contribution = 0.0;  // nonzero only for a randomized "constant" claim
};

// Regime classification: zero_interference if some off-diagonal path set is
// empty, degenerate if some diagonal one is, otherwise decided by whether eta
// is constant (equivalently m31 m12 m23 == m21 m32 m13, since all transfer
// monomials carry coefficient one).
inline RegimeDecision classify_regime(const ExtendedNetwork& xn, const Field& f, uint64_t seed,
                                      int trials, OracleMode mode = OracleMode::automatic,
                                      size_t cap = kDefaultOracleCap, double delta = 1.0) {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      if (i != j && !xn.pathset_nonempty(i, j)) return {Regime::zero_interference, {}, 0.0};
  for (int i = 1; i <= 3; ++i)
    if (!xn.pathset_nonempty(i, i)) return {Regime::degenerate, {}, 0.0};

  if (mode != OracleMode::off) {
    try {
      const bool constant = eta_constant_exact(xn, cap);
      return {constant ? Regime::eta_constant : Regime::general, Method::oracle, 0.0};
    } catch (const scale_exceeded&) {
      if (mode == OracleMode::force) throw;
    }
  }
  // Randomized identity test of m31 m12 m23 + m21 m32 m13.
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(detail::mix_seed(seed, detail::kEtaStream, t));
    const TransferMatrix tm = eval_transfer_matrix(xn, f, sample_coding_vector(xn, f, rng));
    const FieldElement lhs = f.mul(f.mul(tm.at(3, 1), tm.at(1, 2)), tm.at(2, 3));
    const FieldElement rhs = f.mul(f.mul(tm.at(2, 1), tm.at(3, 2)), tm.at(1, 3));
    if (lhs != rhs) return {Regime::general, Method::randomized, 0.0};
  }
  return {Regime::eta_constant, Method::randomized, std::pow(delta, trials)};
}

// Runs the regime-appropriate condition set and assembles the report:
//   general          -> all nine reduced conditions; feasible iff all hold
//   eta_constant     -> feasible iff every p_i is non-constant (p_i != 1);
//                       the p_i != eta records are included as diagnostics
//   zero_interference-> only the pattern "P_23 empty, everything else
//                       nonempty" is decided (feasible iff every p_i is
//                       non-constant); other patterns are reported unsupported
//   degenerate       -> infeasible (some session cannot reach its own sink)
inline FeasibilityReport check_feasibility(const ExtendedNetwork& xn,
                                           const FeasibilityParams& params) {
  const Field f(params.m);
  if (params.trials < 1) throw param_error("trials must be >= 1");
  FeasibilityReport rep;
  rep.params = params;
  rep.L_dist = xn.max_path_edges();
  rep.D_in = xn.max_in_degree();
  rep.delta = 1.0 - std::pow(1.0 - 3.0 / static_cast<double>(f.order()), rep.L_dist);
  rep.per_condition_error = std::pow(rep.delta, params.trials);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) rep.pathset[i - 1][j - 1] = xn.pathset_nonempty(i, j);
  for (int i = 1; i <= 3; ++i) {
    const int cut = session_min_cut(xn, i);
    if (cut > 1)
      rep.warnings.push_back("session " + std::to_string(i) + " has min-cut " +
                             std::to_string(cut) + "; the model assumes min-cut one, guarantees " +
                             "no longer apply");
  }

  const RegimeDecision dec =
      classify_regime(xn, f, params.seed, params.trials, params.oracle, params.cap, rep.delta);
  rep.regime = dec.regime;
  rep.eta_method = dec.eta_method;
  rep.error_bound += dec.error_contribution;

  switch (rep.regime) {
    case Regime::degenerate: {
      rep.feasible = false;
      for (int i = 1; i <= 3; ++i)
        if (!xn.pathset_nonempty(i, i))
          rep.warnings.push_back("session " + std::to_string(i) +
                                 " cannot reach its own sink (P_" + std::to_string(i) +
                                 std::to_string(i) + " empty)");
      return rep;
    }
    case Regime::zero_interference: {
      std::string pattern;
      bool only_23 = true;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (!xn.pathset_nonempty(i, j)) {
            if (!(i == 2 && j == 3)) only_23 = false;
            pattern += (pattern.empty() ? "" : ", ");
            pattern += "P_" + std::to_string(i) + std::to_string(j);
          }
      if (!only_23 || xn.pathset_nonempty(2, 3)) {
        rep.feasible = false;
        rep.unsupported_pattern = pattern;
        rep.warnings.push_back("unsupported zero pattern {" + pattern +
                               "}; only the single-zero pattern P_23 is decided");
        return rep;
      }
      // m23 = 0 removes one alignment constraint; V1 can be chosen freely and
      // feasibility reduces to every p_i being non-constant.
      rep.feasible = true;
      for (int i = 1; i <= 3; ++i) {
        rep.conditions.push_back(check_single_condition(xn, {i, 0, 1}));
        if (rep.conditions.back().verdict == Verdict::violated) rep.feasible = false;
      }
      return rep;
    }
    case Regime::eta_constant: {
      rep.feasible = true;
      for (int i = 1; i <= 3; ++i) {
        rep.conditions.push_back(check_single_condition(xn, {i, 0, 1}));
        if (rep.conditions.back().verdict == Verdict::violated) rep.feasible = false;
      }
      // With eta == 1, p_i != eta coincides with p_i != 1; recorded for the
      // report's completeness, not for the verdict.
      for (int i = 1; i <= 3; ++i) rep.conditions.push_back(check_single_condition(xn, {i, 1, 0}));
      return rep;
    }
    case Regime::general: {
      if (params.n <= 1)
        throw param_error("the general regime requires n > 1 (got n = " +
                          std::to_string(params.n) + ")");
      rep.feasible = true;
      for (int i = 1; i <= 3; ++i) {
        for (ConditionId id : {ConditionId{i, 0, 1}, ConditionId{i, 1, 0}}) {
          rep.conditions.push_back(check_single_condition(xn, id));
          if (rep.conditions.back().verdict == Verdict::violated) rep.feasible = false;
        }
        ConditionRecord mixed =
            params.oracle == OracleMode::force
                ? ConditionRecord{{i, 1, 1},
                                  condition_name({i, 1, 1}),
                                  Method::oracle,
                                  triple_identity_zero(xn, i, params.cap) ? Verdict::violated
                                                                          : Verdict::holds,
                                  {},
                                  {},
                                  0.0}
                : check_mixed_condition(xn, f, {i, 1, 1}, params.trials, params.seed, rep.delta);
        rep.error_bound += mixed.error_contribution;
        if (mixed.verdict == Verdict::violated) rep.feasible = false;
        rep.conditions.push_back(std::move(mixed));
      }
      return rep;
    }
  }
  throw internal_error("unreachable regime");
}

}  // namespace pbna
