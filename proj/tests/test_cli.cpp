#include "pbna/cli.hpp"

#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace pbna;

namespace {

std::string graph_path(const char* name) { return std::string(PBNA_GRAPHS_DIR) + "/" + name; }

cli::CheckOptions check_opts(const char* graph, uint64_t seed = 42) {
  cli::CheckOptions o;
  o.graph_path = graph_path(graph);
  o.seed = seed;
  return o;
}

}  // namespace

TEST_CASE("cmd_check exit codes and report shape") {
  SUBCASE("two-relay: feasible, exit 0, nine conditions") {
    std::ostringstream out, err;
    CHECK(cli::cmd_check(check_opts("two_relay.json"), out, err) == cli::kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["kind"] == "feasibility");
    CHECK(j["feasible"] == true);
    CHECK(j["regime"] == "general");
    CHECK(j["conditions"].size() == 9);
    CHECK(j["params"]["seed"] == 42);
    // Certificates are embedded for every deterministic holding condition.
    for (const auto& c : j["conditions"])
      if (c["method"] == "maxflow" && c["verdict"] == "holds") {
        REQUIRE(c.contains("certificate"));
        CHECK(c["certificate"]["disjoint_paths"].size() == 2);
      }
  }
  SUBCASE("shared bottleneck: infeasible, exit 2, no certificates") {
    std::ostringstream out, err;
    CHECK(cli::cmd_check(check_opts("shared_bottleneck.json"), out, err) == cli::kExitInfeasible);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["feasible"] == false);
    for (const auto& c : j["conditions"]) {
      CHECK(c["verdict"] == "violated");
      CHECK_FALSE(c.contains("certificate"));
    }
  }
  SUBCASE("disjoint sessions: unsupported zero pattern, exit 3") {
    std::ostringstream out, err;
    CHECK(cli::cmd_check(check_opts("disjoint_sessions.json"), out, err) ==
          cli::kExitUnsupportedPattern);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j.contains("unsupported_pattern"));
  }
  SUBCASE("malformed file: exit 1") {
    std::ostringstream out, err;
    cli::CheckOptions o;
    o.graph_path = "/nonexistent/nope.json";
    o.seed = 1;
    CHECK(cli::cmd_check(o, out, err) == cli::kExitError);
    CHECK(err.str().find("error") != std::string::npos);
  }
}

TEST_CASE("cmd_simulate") {
  SUBCASE("two-relay n=2: exit 0 with exact rates") {
    cli::SimulateOptions o;
    o.common = check_opts("two_relay.json");
    o.common.n = 2;
    std::ostringstream out, err;
    CHECK(cli::cmd_simulate(o, out, err) == cli::kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["kind"] == "simulation");
    CHECK(j["success"] == true);
    CHECK(j["rates"]["tuple"] == nlohmann::json::array({"3/5", "2/5", "2/5"}));
    CHECK(j["rates"]["num"] == nlohmann::json::array({3, 2, 2}));
    CHECK(j["rates"]["den"] == 5);
    CHECK(j["feasibility"]["feasible"] == true);
  }
  SUBCASE("forced shared bottleneck: exit 2 with collapsed ranks") {
    cli::SimulateOptions o;
    o.common = check_opts("shared_bottleneck.json");
    o.force = true;
    std::ostringstream out, err;
    CHECK(cli::cmd_simulate(o, out, err) == cli::kExitInfeasible);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["success"] == false);
    for (const auto& r : j["psi_ranks"]) CHECK(r.get<int>() < 5);
  }
  SUBCASE("n=1: exit 1") {
    cli::SimulateOptions o;
    o.common = check_opts("two_relay.json");
    o.common.n = 1;
    std::ostringstream out, err;
    CHECK(cli::cmd_simulate(o, out, err) == cli::kExitError);
  }
}

TEST_CASE("cmd_oracle") {
  SUBCASE("diamond identities and square-term sweep") {
    cli::OracleOptions o;
    o.graph_path = graph_path("diamond.json");
    std::ostringstream out, err;
    CHECK(cli::cmd_oracle(o, out, err) == cli::kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["product_identities"].size() == 6);
    CHECK(j["triple_identities"].size() == 3);

    o.what = "square-term";
    std::ostringstream out2;
    CHECK(cli::cmd_oracle(o, out2, err) == cli::kExitOk);
    CHECK(nlohmann::json::parse(out2.str())["square_term"]["all_equal"] == true);
  }
  SUBCASE("shared bottleneck: every product identity holds (ratios constant)") {
    cli::OracleOptions o;
    o.graph_path = graph_path("shared_bottleneck.json");
    std::ostringstream out, err;
    CHECK(cli::cmd_oracle(o, out, err) == cli::kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    for (const auto& p : j["product_identities"]) CHECK(p["products_equal"] == true);
    for (const auto& t : j["triple_identities"]) CHECK(t["zero"] == false);
  }
  SUBCASE("tiny cap: exit 4") {
    cli::OracleOptions o;
    o.graph_path = graph_path("two_relay.json");
    o.cap = 1;
    std::ostringstream out, err;
    CHECK(cli::cmd_oracle(o, out, err) == cli::kExitOracleScale);
  }
  SUBCASE("a 30-edge chain of diamonds blows the default cap: exit 4") {
    // 15 two-edge stages give 2^15 parallel routes, far over the term budget.
    nlohmann::json g;
    g["nodes"] = nlohmann::json::array();
    g["edges"] = nlohmann::json::array();
    for (int v = 0; v <= 15; ++v) g["nodes"].push_back("v" + std::to_string(v));
    for (int v = 0; v < 15; ++v) {
      g["edges"].push_back({{"id", "top" + std::to_string(v)},
                            {"from", "v" + std::to_string(v)},
                            {"to", "v" + std::to_string(v + 1)}});
      g["edges"].push_back({{"id", "bot" + std::to_string(v)},
                            {"from", "v" + std::to_string(v)},
                            {"to", "v" + std::to_string(v + 1)}});
    }
    g["sessions"] = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) g["sessions"].push_back({{"source", "v0"}, {"sink", "v15"}});
    const std::string path = std::string(PBNA_GRAPHS_DIR) + "/../build/_wide_graph_test.json";
    std::ofstream(path) << g.dump();
    cli::OracleOptions o;
    o.graph_path = path;
    std::ostringstream out, err;
    CHECK(cli::cmd_oracle(o, out, err) == cli::kExitOracleScale);

    SUBCASE("but cmd_check falls back to randomized classification") {
      cli::CheckOptions c;
      c.graph_path = path;
      c.seed = 11;
      std::ostringstream cout_, cerr_;
      const int code = cli::cmd_check(c, cout_, cerr_);
      CHECK((code == cli::kExitOk || code == cli::kExitInfeasible));
      const auto jc = nlohmann::json::parse(cout_.str());
      CHECK(jc["eta_decision"] == "randomized");
      CHECK(jc["regime"] == "general");
    }
    SUBCASE("while --oracle force on it is an error (exit 4)") {
      cli::CheckOptions c;
      c.graph_path = path;
      c.seed = 11;
      c.oracle_mode = "force";
      std::ostringstream cout_, cerr_;
      CHECK(cli::cmd_check(c, cout_, cerr_) == cli::kExitOracleScale);
    }
  }
}

TEST_CASE("--oracle force yields exact mixed-condition records") {
  cli::CheckOptions o = check_opts("two_relay.json");
  o.oracle_mode = "force";
  std::ostringstream out, err;
  CHECK(cli::cmd_check(o, out, err) == cli::kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["eta_decision"] == "oracle");
  for (const auto& c : j["conditions"])
    if (c["a"] == 1 && c["b"] == 1) CHECK(c["method"] == "oracle");
  CHECK(j["bound"]["error_bound"] == 0.0);
}

TEST_CASE("reports carry the full schema key set") {
  static const char* kFeasibilityKeys[] = {"schema",   "tool_version", "kind",
                                           "params",   "graph",        "variables",
                                           "regime",   "feasible",     "conditions",
                                           "pathsets_nonempty", "bound", "warnings"};
  static const char* kSimulationKeys[] = {"schema", "tool_version", "kind",   "params",
                                          "graph",  "variables",    "feasibility", "regime",
                                          "L",      "L1",           "L2",     "slots",
                                          "thetas", "gamma",        "V2",     "V3",
                                          "psi_ranks", "X",         "Z",      "X_hat",
                                          "decoded_ok", "rates",    "success", "warnings"};
  std::ostringstream out, err;
  cli::cmd_check(check_opts("two_relay.json"), out, err);
  const auto jf = nlohmann::json::parse(out.str());
  for (const char* k : kFeasibilityKeys) CHECK_MESSAGE(jf.contains(k), k);

  cli::SimulateOptions so;
  so.common = check_opts("two_relay.json");
  std::ostringstream out2;
  cli::cmd_simulate(so, out2, err);
  const auto js = nlohmann::json::parse(out2.str());
  for (const char* k : kSimulationKeys) CHECK_MESSAGE(js.contains(k), k);
  CHECK(js["params"] == jf["params"]);
}

TEST_CASE("reports are byte-identical across runs and round-trip losslessly") {
  std::ostringstream a, b, err;
  cli::cmd_check(check_opts("two_relay.json"), a, err);
  cli::cmd_check(check_opts("two_relay.json"), b, err);
  CHECK(a.str() == b.str());

  const auto parsed = nlohmann::json::parse(a.str());
  CHECK(parsed.dump(2) + "\n" == a.str());

  SUBCASE("a different seed still gives identical deterministic content") {
    std::ostringstream c;
    cli::cmd_check(check_opts("two_relay.json", 43), c, err);
    const auto j1 = nlohmann::json::parse(a.str());
    const auto j2 = nlohmann::json::parse(c.str());
    CHECK(j1["regime"] == j2["regime"]);
    CHECK(j1["feasible"] == j2["feasible"]);
  }
}

TEST_CASE("--out writes the report to a file") {
  cli::CheckOptions o = check_opts("two_relay.json");
  o.out_path = std::string(PBNA_GRAPHS_DIR) + "/../build/_cli_out_test.json";
  std::ostringstream out, err;
  CHECK(cli::cmd_check(o, out, err) == cli::kExitOk);
  CHECK(out.str().empty());
  std::ifstream in(*o.out_path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j["kind"] == "feasibility");
}
