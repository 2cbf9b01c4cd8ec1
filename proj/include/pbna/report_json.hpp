#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbna/feasibility.hpp"
#include "pbna/netgraph.hpp"
#include "pbna/simulate.hpp"
#include "pbna/version.hpp"

namespace pbna {

// Machine-readable reports. Serialization is deterministic (nlohmann objects
// keep keys sorted), so identical inputs and seeds give byte-identical output.

inline std::string to_hex(FieldElement v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%x", v.bits);
  return buf;
}

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::general: return "general";
    case Regime::eta_constant: return "eta_constant";
    case Regime::zero_interference: return "zero_interference";
    case Regime::degenerate: return "degenerate";
  }
  return "?";
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::maxflow: return "maxflow";
    case Method::randomized: return "randomized";
    case Method::oracle: return "oracle";
  }
  return "?";
}

inline const char* oracle_mode_name(OracleMode m) {
  switch (m) {
    case OracleMode::automatic: return "auto";
    case OracleMode::force: return "force";
    case OracleMode::off: return "off";
  }
  return "?";
}

namespace detail {

inline nlohmann::json graph_json(const ExtendedNetwork& xn) {
  nlohmann::json sessions = nlohmann::json::array();
  for (const auto& s : xn.base().sessions())
    sessions.push_back({{"source", xn.base().node_name(s.source)},
                        {"sink", xn.base().node_name(s.sink)}});
  return {{"nodes", xn.base().nodes().size()},
          {"edges", xn.base().edges().size()},
          {"sessions", sessions}};
}

// The coding-variable table: pair id k maps to [upstream edge, downstream edge],
// so embedded points and witnesses can be re-verified without rerunning.
inline nlohmann::json variables_json(const ExtendedNetwork& xn) {
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& p : xn.pairs())
    vars.push_back({xn.edge_id(p.up), xn.edge_id(p.down)});
  return vars;
}

inline nlohmann::json point_json(const CodingVector& cv) {
  nlohmann::json arr = nlohmann::json::array();
  for (FieldElement v : cv.x) arr.push_back(to_hex(v));
  return arr;
}

inline nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(to_hex(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json vector_json(const std::vector<FieldElement>& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (FieldElement x : v) arr.push_back(to_hex(x));
  return arr;
}

inline nlohmann::json path_json(const ExtendedNetwork& xn, const std::vector<int>& edges) {
  nlohmann::json arr = nlohmann::json::array();
  for (int e : edges) arr.push_back(xn.edge_id(e));
  return arr;
}

inline nlohmann::json params_json(const FeasibilityParams& p) {
  return {{"m", p.m},         {"trials", p.trials},
          {"seed", p.seed},   {"n", p.n},
          {"oracle", oracle_mode_name(p.oracle)}, {"cap", p.cap}};
}

}  // namespace detail

inline nlohmann::json feasibility_report_json(const ExtendedNetwork& xn,
                                              const FeasibilityReport& rep) {
  nlohmann::json conditions = nlohmann::json::array();
  for (const auto& c : rep.conditions) {
    nlohmann::json jc = {{"i", c.id.i},
                         {"a", c.id.a},
                         {"b", c.id.b},
                         {"name", c.name},
                         {"method", method_name(c.method)},
                         {"verdict", c.verdict == Verdict::holds ? "holds" : "violated"}};
    if (c.certificate) {
      jc["certificate"] = {{"disjoint_paths",
                            nlohmann::json::array({detail::path_json(xn, c.certificate->paths[0]),
                                                   detail::path_json(xn, c.certificate->paths[1])})}};
    }
    if (c.witness)
      jc["witness"] = {{"trial", c.witness->trial}, {"point", detail::point_json(c.witness->point)}};
    if (c.method == Method::randomized) jc["error_contribution"] = c.error_contribution;
    conditions.push_back(std::move(jc));
  }

  nlohmann::json pathsets = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 3; ++j) row.push_back(rep.pathset[i][j]);
    pathsets.push_back(std::move(row));
  }

  nlohmann::json j = {
      {"schema", kReportSchema},
      {"tool_version", kToolVersion},
      {"kind", "feasibility"},
      {"params", detail::params_json(rep.params)},
      {"graph", detail::graph_json(xn)},
      {"variables", detail::variables_json(xn)},
      {"regime", regime_name(rep.regime)},
      {"feasible", rep.feasible},
      {"conditions", std::move(conditions)},
      {"pathsets_nonempty", std::move(pathsets)},
      {"bound",
       {{"L_dist", rep.L_dist},
        {"D_in", rep.D_in},
        {"delta", rep.delta},
        {"per_condition_error", rep.per_condition_error},
        {"error_bound", rep.error_bound}}},
      {"warnings", rep.warnings},
  };
  if (rep.unsupported_pattern) j["unsupported_pattern"] = *rep.unsupported_pattern;
  if (rep.eta_method) j["eta_decision"] = method_name(*rep.eta_method);
  return j;
}

inline nlohmann::json sim_result_json(const ExtendedNetwork& xn, const FeasibilityReport& feas,
                                      const SimResult& sim) {
  nlohmann::json slots = nlohmann::json::array();
  for (size_t k = 0; k < sim.slots.size(); ++k) {
    nlohmann::json m = nlohmann::json::array();
    for (int i = 1; i <= 3; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 1; j <= 3; ++j) row.push_back(to_hex(sim.slot_tm[k].at(i, j)));
      m.push_back(std::move(row));
    }
    slots.push_back({{"x", detail::point_json(sim.slots[k])},
                     {"m", std::move(m)},
                     {"eta", to_hex(sim.gamma.eta_values[k])}});
  }
  auto rate_str = [](Rational r) {
    return std::to_string(r.num) + "/" + std::to_string(r.den);
  };
  nlohmann::json j = {
      {"schema", kReportSchema},
      {"tool_version", kToolVersion},
      {"kind", "simulation"},
      {"params", detail::params_json(feas.params)},
      {"graph", detail::graph_json(xn)},
      {"variables", detail::variables_json(xn)},
      {"feasibility", feasibility_report_json(xn, feas)},
      {"regime", regime_name(sim.regime)},
      {"L", sim.L},
      {"L1", sim.L1},
      {"L2", sim.L2},
      {"slots", std::move(slots)},
      {"thetas", detail::vector_json(sim.thetas)},
      {"gamma",
       {{"n", sim.gamma.n},
        {"V1", detail::matrix_json(sim.gamma.V1)},
        {"A", detail::matrix_json(sim.gamma.A)},
        {"B", detail::matrix_json(sim.gamma.B)},
        {"C", detail::matrix_json(sim.gamma.C)},
        {"eta_values", detail::vector_json(sim.gamma.eta_values)}}},
      {"V2", detail::matrix_json(sim.V2)},
      {"V3", detail::matrix_json(sim.V3)},
      {"psi_ranks", sim.psi_ranks},
      {"X", nlohmann::json::array({detail::vector_json(sim.X[0]), detail::vector_json(sim.X[1]),
                                   detail::vector_json(sim.X[2])})},
      {"Z", nlohmann::json::array({detail::vector_json(sim.Z[0]), detail::vector_json(sim.Z[1]),
                                   detail::vector_json(sim.Z[2])})},
      {"X_hat",
       nlohmann::json::array({detail::vector_json(sim.Xhat[0]), detail::vector_json(sim.Xhat[1]),
                              detail::vector_json(sim.Xhat[2])})},
      {"decoded_ok", sim.decoded_ok},
      {"rates",
       {{"tuple", nlohmann::json::array({rate_str(sim.rates[0]), rate_str(sim.rates[1]),
                                         rate_str(sim.rates[2])})},
        {"num", nlohmann::json::array({sim.rates[0].num, sim.rates[1].num, sim.rates[2].num})},
        {"den", sim.rates[0].den}}},
      {"success", sim.success},
      {"warnings", sim.warnings},
  };
  return j;
}

}  // namespace pbna
