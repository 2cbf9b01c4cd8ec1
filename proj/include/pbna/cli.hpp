#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "pbna/oracle.hpp"
#include "pbna/report_json.hpp"
#include "pbna/simulate.hpp"

namespace pbna::cli {

// Command logic shared by the executable and the test suites. Exit codes are a
// stable contract:
//   0  feasible / successful simulation
//   1  error (bad input, bad parameters, internal failure)
//   2  infeasible
//   3  unsupported zero pattern (or a regime the simulator does not cover)
//   4  oracle scale exceeded
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitUnsupportedPattern = 3;
inline constexpr int kExitOracleScale = 4;

struct CheckOptions {
  std::string graph_path;
  unsigned m = 16;
  int trials = 32;
  uint64_t seed = 0;
  int n = 2;
  std::string oracle_mode = "auto";
  std::optional<std::string> out_path;
};

struct SimulateOptions {
  CheckOptions common;
  bool force = false;
  int max_resamples = 64;
};

struct OracleOptions {
  std::string graph_path;
  std::string what = "identities";  // identities | square-term | paths
  size_t cap = kDefaultOracleCap;
  std::optional<std::string> out_path;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open graph file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline OracleMode parse_oracle_mode(const std::string& s) {
  if (s == "auto") return OracleMode::automatic;
  if (s == "force") return OracleMode::force;
  if (s == "off") return OracleMode::off;
  throw param_error("--oracle must be one of auto|force|off, got '" + s + "'");
}

inline void emit(const nlohmann::json& j, const std::optional<std::string>& out_path,
                 std::ostream& fallback) {
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) throw parse_error("cannot open output file '" + *out_path + "'");
    out << j.dump(2) << "\n";
  } else {
    fallback << j.dump(2) << "\n";
  }
}

inline FeasibilityParams to_params(const CheckOptions& o) {
  FeasibilityParams p;
  p.m = o.m;
  p.trials = o.trials;
  p.seed = o.seed;
  p.n = o.n;
  p.oracle = parse_oracle_mode(o.oracle_mode);
  return p;
}

}  // namespace detail

inline int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const ExtendedNetwork xn = extend(parse_network(detail::read_file(opt.graph_path)));
    const FeasibilityReport rep = check_feasibility(xn, detail::to_params(opt));
    detail::emit(feasibility_report_json(xn, rep), opt.out_path, out);
    if (rep.unsupported_pattern) return kExitUnsupportedPattern;
    return rep.feasible ? kExitOk : kExitInfeasible;
  } catch (const scale_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleScale;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const ExtendedNetwork xn = extend(parse_network(detail::read_file(opt.common.graph_path)));
    const FeasibilityReport rep = check_feasibility(xn, detail::to_params(opt.common));
    if (rep.unsupported_pattern) {
      detail::emit(feasibility_report_json(xn, rep), opt.common.out_path, out);
      err << "error: unsupported zero pattern {" << *rep.unsupported_pattern << "}\n";
      return kExitUnsupportedPattern;
    }
    if (rep.regime == Regime::zero_interference) {
      detail::emit(feasibility_report_json(xn, rep), opt.common.out_path, out);
      err << "error: simulation is not implemented for the zero-interference regime\n";
      return kExitUnsupportedPattern;
    }
    if (!rep.feasible && !opt.force) {
      detail::emit(feasibility_report_json(xn, rep), opt.common.out_path, out);
      err << "infeasible: see the report for the violated conditions (use --force to simulate "
             "anyway)\n";
      return kExitInfeasible;
    }
    SimParams sp;
    sp.n = opt.common.n;
    sp.m = opt.common.m;
    sp.seed = opt.common.seed;
    sp.force = opt.force && !rep.feasible;
    sp.max_resamples = opt.max_resamples;
    const SimResult sim = run_pbna(xn, sp, rep);
    detail::emit(sim_result_json(xn, rep, sim), opt.common.out_path, out);
    if (rep.feasible && sim.success) return kExitOk;
    return rep.feasible ? kExitError : kExitInfeasible;
  } catch (const scale_exceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitOracleScale;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

inline int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const ExtendedNetwork xn = extend(parse_network(detail::read_file(opt.graph_path)));
    nlohmann::json j = {{"schema", kReportSchema},
                        {"tool_version", kToolVersion},
                        {"kind", "oracle"},
                        {"params", {{"cap", opt.cap}, {"what", opt.what}}},
                        {"graph", pbna::detail::graph_json(xn)}};

    if (opt.what == "paths" || opt.what == "identities" || opt.what == "square-term") {
      nlohmann::json counts = nlohmann::json::array();
      for (int i = 1; i <= 3; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 1; jj <= 3; ++jj) row.push_back(enum_paths(xn, jj, i, opt.cap).size());
        counts.push_back(std::move(row));
      }
      j["path_counts"] = std::move(counts);
    }

    if (opt.what == "identities") {
      nlohmann::json products = nlohmann::json::array();
      for (RatioTag tag : {RatioTag::p1, RatioTag::p2, RatioTag::p3, RatioTag::q1, RatioTag::q2,
                           RatioTag::q3}) {
        const RatioQuad q = ratio_quad(tag);
        static const char* names[] = {"p1", "p2", "p3", "q1", "q2", "q3"};
        products.push_back(
            {{"ratio", names[static_cast<int>(tag)]},
             {"quad", {q.a, q.b, q.p, q.q}},
             {"products_equal", product_identity_holds(xn, q.a, q.b, q.p, q.q, opt.cap)}});
      }
      j["product_identities"] = std::move(products);

      nlohmann::json triples = nlohmann::json::array();
      for (int i = 1; i <= 3; ++i) {
        try {
          triples.push_back({{"i", i}, {"zero", triple_identity_zero(xn, i, opt.cap)}});
        } catch (const zero_transfer& z) {
          triples.push_back({{"i", i}, {"skipped", z.what()}});
        }
      }
      j["triple_identities"] = std::move(triples);
    }

    if (opt.what == "square-term") {
      // Sweep every coding variable and every valid index quadruple.
      nlohmann::json failures = nlohmann::json::array();
      size_t checks = 0;
      for (int a = 1; a <= 3; ++a)
        for (int p = 1; p <= 3; ++p) {
          if (a == p) continue;
          for (int b = 1; b <= 3; ++b)
            for (int q = 1; q <= 3; ++q) {
              if (b == q) continue;
              for (size_t var = 0; var < xn.pairs().size(); ++var) {
                ++checks;
                if (!square_term_equal(xn, a, b, p, q, static_cast<int>(var), opt.cap))
                  failures.push_back({{"quad", {a, b, p, q}}, {"variable", var}});
              }
            }
        }
      j["square_term"] = {{"checks", checks},
                          {"all_equal", failures.empty()},
                          {"failures", std::move(failures)}};
    }

    detail::emit(j, opt.out_path, out);
    return kExitOk;
  } catch (const scale_exceeded& e) {
    err << "error: " << e.what() << "; use the randomized checker instead\n";
    return kExitOracleScale;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace pbna::cli
