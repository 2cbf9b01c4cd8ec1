#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbna/errors.hpp"

namespace pbna {

// The input DAG with exactly three unicast sessions. Parallel edges are
// allowed; they carry distinct ids. Immutable once constructed.
class Network {
 public:
  struct Edge {
    std::string id;
    int tail = -1;
    int head = -1;
  };
  struct Session {
    int source = -1;
    int sink = -1;
  };

  struct EdgeDef {
    std::string id, from, to;
  };
  struct SessionDef {
    std::string source, sink;
  };

  static Network build(const std::vector<std::string>& nodes, const std::vector<EdgeDef>& edges,
                       const std::vector<SessionDef>& sessions) {
    Network net;
    for (const auto& n : nodes) {
      if (net.node_index_.count(n)) throw parse_error("duplicate node id '" + n + "'");
      net.node_index_[n] = static_cast<int>(net.nodes_.size());
      net.nodes_.push_back(n);
    }
    std::set<std::string> edge_ids;
    for (const auto& e : edges) {
      if (!edge_ids.insert(e.id).second) throw parse_error("duplicate edge id '" + e.id + "'");
      if (is_reserved_id(e.id)) throw parse_error("edge id '" + e.id + "' is reserved");
      net.edges_.push_back({e.id, net.node(e.from), net.node(e.to)});
    }
    if (sessions.size() != 3)
      throw parse_error("exactly 3 sessions required, got " + std::to_string(sessions.size()));
    for (size_t i = 0; i < 3; ++i) {
      const int s = net.node(sessions[i].source);
      const int d = net.node(sessions[i].sink);
      if (s == d)
        throw parse_error("session " + std::to_string(i + 1) + " has source == sink ('" +
                          sessions[i].source + "')");
      net.sessions_[i] = {s, d};
    }
    net.check_acyclic();
    return net;
  }

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::array<Session, 3>& sessions() const { return sessions_; }
  const std::string& node_name(int v) const { return nodes_[v]; }

  static bool is_reserved_id(const std::string& id) {
    for (int i = 1; i <= 3; ++i) {
      if (id == "sigma_" + std::to_string(i) || id == "tau_" + std::to_string(i)) return true;
    }
    return false;
  }

 private:
  int node(const std::string& name) const {
    auto it = node_index_.find(name);
    if (it == node_index_.end()) throw parse_error("undeclared node '" + name + "'");
    return it->second;
  }

  // DFS three-coloring; on a cycle we can name the edge that closes it.
  void check_acyclic() const {
    std::vector<std::vector<int>> out(nodes_.size());
    for (size_t e = 0; e < edges_.size(); ++e) out[edges_[e].tail].push_back(static_cast<int>(e));
    std::vector<int> color(nodes_.size(), 0);  // 0 white, 1 on stack, 2 done
    struct Frame {
      int v;
      size_t next;
    };
    for (size_t root = 0; root < nodes_.size(); ++root) {
      if (color[root]) continue;
      std::vector<Frame> stack{{static_cast<int>(root), 0}};
      color[root] = 1;
      while (!stack.empty()) {
        Frame& fr = stack.back();
        if (fr.next == out[fr.v].size()) {
          color[fr.v] = 2;
          stack.pop_back();
          continue;
        }
        const int e = out[fr.v][fr.next++];
        const int w = edges_[e].head;
        if (color[w] == 1)
          throw parse_error("graph has a cycle: edge '" + edges_[e].id + "' re-enters node '" +
                            nodes_[w] + "'");
        if (color[w] == 0) {
          color[w] = 1;
          stack.push_back({w, 0});
        }
      }
    }
  }

  std::vector<std::string> nodes_;
  std::map<std::string, int> node_index_;
  std::vector<Edge> edges_;
  std::array<Session, 3> sessions_{};
};

// Strict parser for the JSON graph format:
//   {"nodes": ["a", ...],
//    "edges": [{"id": "e1", "from": "a", "to": "b"}, ...],
//    "sessions": [{"source": "a", "sink": "b"}, x3]}
// Unknown keys are rejected at every level.
inline Network parse_network(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  auto require_keys = [](const nlohmann::json& obj, std::initializer_list<const char*> keys,
                         const char* what) {
    if (!obj.is_object()) throw parse_error(std::string(what) + " must be a JSON object");
    for (const auto& item : obj.items()) {
      const std::string& key = item.key();
      if (std::find_if(keys.begin(), keys.end(), [&key](const char* s) { return key == s; }) ==
          keys.end())
        throw parse_error("unknown key '" + key + "' in " + what);
    }
    for (const char* k : keys)
      if (!obj.contains(k)) throw parse_error(std::string("missing key '") + k + "' in " + what);
  };
  require_keys(j, {"nodes", "edges", "sessions"}, "graph file");

  std::vector<std::string> nodes;
  for (const auto& n : j["nodes"]) {
    if (!n.is_string()) throw parse_error("node ids must be strings");
    nodes.push_back(n.get<std::string>());
  }
  std::vector<Network::EdgeDef> edges;
  for (const auto& e : j["edges"]) {
    require_keys(e, {"id", "from", "to"}, "edge");
    edges.push_back({e["id"].get<std::string>(), e["from"].get<std::string>(), e["to"].get<std::string>()});
  }
  std::vector<Network::SessionDef> sessions;
  for (const auto& s : j["sessions"]) {
    require_keys(s, {"source", "sink"}, "session");
    sessions.push_back({s["source"].get<std::string>(), s["sink"].get<std::string>()});
  }
  return Network::build(nodes, edges, sessions);
}

// The extended graph: the base DAG plus virtual sender edges sigma_i and
// virtual receiver edges tau_i, a topological order over all edges, and the
// adjacency-pair table that indexes the coding variables x_{e'e}.
class ExtendedNetwork {
 public:
  struct Pair {
    int up = -1;    // edge index of e'
    int down = -1;  // edge index of e, head(e') == tail(e)
  };

  explicit ExtendedNetwork(Network base) : base_(std::move(base)) {
    const int n_base = static_cast<int>(base_.nodes().size());
    const int e_base = static_cast<int>(base_.edges().size());
    node_count_ = n_base + 6;           // + s'_i and d'_i
    edge_count_ = e_base + 6;           // + sigma_i and tau_i
    tails_.resize(edge_count_);
    heads_.resize(edge_count_);
    ids_.resize(edge_count_);
    for (int e = 0; e < e_base; ++e) {
      tails_[e] = base_.edges()[e].tail;
      heads_[e] = base_.edges()[e].head;
      ids_[e] = base_.edges()[e].id;
    }
    for (int i = 0; i < 3; ++i) {
      const int sp = n_base + i;      // s'_i
      const int dp = n_base + 3 + i;  // d'_i
      sigma_[i] = e_base + i;
      tau_[i] = e_base + 3 + i;
      tails_[sigma_[i]] = sp;
      heads_[sigma_[i]] = base_.sessions()[i].source;
      ids_[sigma_[i]] = "sigma_" + std::to_string(i + 1);
      tails_[tau_[i]] = base_.sessions()[i].sink;
      heads_[tau_[i]] = dp;
      ids_[tau_[i]] = "tau_" + std::to_string(i + 1);
    }
    build_topo_order();
    build_pairs();
    build_reachability();
  }

  const Network& base() const { return base_; }
  int node_count() const { return node_count_; }
  int edge_count() const { return edge_count_; }
  int tail(int e) const { return tails_[e]; }
  int head(int e) const { return heads_[e]; }
  const std::string& edge_id(int e) const { return ids_[e]; }
  int sigma(int i) const { return sigma_[i]; }  // i in 0..2
  int tau(int i) const { return tau_[i]; }

  // o(e): strict total order consistent with adjacency.
  int order_of(int e) const { return order_of_[e]; }
  const std::vector<int>& edges_in_order() const { return edges_by_order_; }

  const std::vector<Pair>& pairs() const { return pairs_; }
  const std::vector<int>& pairs_into(int e) const { return pairs_into_[e]; }
  int pair_id(int up, int down) const {
    for (int pid : pairs_into_[down])
      if (pairs_[pid].up == up) return pid;
    throw internal_error("no adjacency pair (" + ids_[up] + ", " + ids_[down] + ")");
  }

  // P_ij nonempty <=> d'_i reachable from s'_j. 1-based session indices.
  bool pathset_nonempty(int i, int j) const { return reach_[j - 1][tau_[i - 1]]; }

  // Longest s' -> d' path over all session pairs, in edges (sigma and tau
  // included); feeds the Schwartz-Zippel style error bound.
  int max_path_edges() const { return max_path_edges_; }

  // Maximum in-degree over extended nodes (reported with the runtime bound).
  int max_in_degree() const {
    std::vector<int> deg(node_count_, 0);
    for (int e = 0; e < edge_count_; ++e) ++deg[heads_[e]];
    return *std::max_element(deg.begin(), deg.end());
  }

 private:
  void build_topo_order() {
    // Kahn over nodes, smallest node index first, so the order is a pure
    // function of the input.
    std::vector<int> indeg(node_count_, 0);
    for (int e = 0; e < edge_count_; ++e) ++indeg[heads_[e]];
    std::vector<std::vector<int>> out(node_count_);
    for (int e = 0; e < edge_count_; ++e) out[tails_[e]].push_back(e);
    std::set<int> ready;
    for (int v = 0; v < node_count_; ++v)
      if (indeg[v] == 0) ready.insert(v);
    std::vector<int> node_pos(node_count_, -1);
    int pos = 0;
    while (!ready.empty()) {
      const int v = *ready.begin();
      ready.erase(ready.begin());
      node_pos[v] = pos++;
      for (int e : out[v])
        if (--indeg[heads_[e]] == 0) ready.insert(heads_[e]);
    }
    if (pos != node_count_) throw internal_error("extended graph not acyclic");

    edges_by_order_.resize(edge_count_);
    for (int e = 0; e < edge_count_; ++e) edges_by_order_[e] = e;
    // Ties within a tail node broken by edge id, per the format contract.
    std::sort(edges_by_order_.begin(), edges_by_order_.end(), [&](int a, int b) {
      if (node_pos[tails_[a]] != node_pos[tails_[b]]) return node_pos[tails_[a]] < node_pos[tails_[b]];
      return ids_[a] < ids_[b];
    });
    order_of_.resize(edge_count_);
    for (int k = 0; k < edge_count_; ++k) order_of_[edges_by_order_[k]] = k;
  }

  void build_pairs() {
    std::vector<std::vector<int>> into_node(node_count_);
    for (int e : edges_by_order_) into_node[heads_[e]].push_back(e);
    pairs_into_.resize(edge_count_);
    for (int e : edges_by_order_) {
      for (int up : into_node[tails_[e]]) {
        pairs_into_[e].push_back(static_cast<int>(pairs_.size()));
        pairs_.push_back({up, e});
      }
    }
  }

  void build_reachability() {
    max_path_edges_ = 0;
    for (int j = 0; j < 3; ++j) {
      auto& reach = reach_[j];
      reach.assign(edge_count_, false);
      std::vector<int> len(edge_count_, 0);
      reach[sigma_[j]] = true;
      len[sigma_[j]] = 1;
      for (int e : edges_by_order_) {
        for (int pid : pairs_into_[e]) {
          const int up = pairs_[pid].up;
          if (reach[up]) {
            reach[e] = true;
            len[e] = std::max(len[e], len[up] + 1);
          }
        }
      }
      for (int i = 0; i < 3; ++i)
        if (reach[tau_[i]]) max_path_edges_ = std::max(max_path_edges_, len[tau_[i]]);
    }
  }

  Network base_;
  int node_count_ = 0, edge_count_ = 0;
  std::vector<int> tails_, heads_;
  std::vector<std::string> ids_;
  std::array<int, 3> sigma_{}, tau_{};
  std::vector<int> order_of_, edges_by_order_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<int>> pairs_into_;
  std::array<std::vector<bool>, 3> reach_;
  int max_path_edges_ = 0;
};

inline ExtendedNetwork extend(Network net) { return ExtendedNetwork(std::move(net)); }

namespace detail {

// Unit-capacity max flow by BFS augmenting paths (Edmonds-Karp), with an early
// stop: for the disjoint-pair test only values up to 2 matter.
class UnitFlow {
 public:
  explicit UnitFlow(const ExtendedNetwork& xn) : xn_(xn) {
    const int n = xn.node_count() + 2;
    src_ = n - 2;
    dst_ = n - 1;
    adj_.resize(n);
    for (int e : xn.edges_in_order()) add_arc(xn.tail(e), xn.head(e), e);
  }

  void attach_source(int sigma_edge) { add_arc(src_, xn_.tail(sigma_edge), -1); }
  void attach_sink(int tau_edge) { add_arc(xn_.head(tau_edge), dst_, -1); }

  // Uncapacitated attachment straight to a base node, for session min-cuts
  // (the virtual edges must not constrain the s_i -> d_i cut).
  void attach_source_node(int node) { add_arc(src_, node, -1, kBigCap); }
  void attach_sink_node(int node) { add_arc(node, dst_, -1, kBigCap); }

  int run(int cap) {
    int total = 0;
    while (total < cap && augment()) ++total;
    return total;
  }

  // Decomposes the current flow into edge-id paths from the super source.
  std::vector<std::vector<int>> flow_paths() const {
    std::vector<std::vector<int>> paths;
    std::vector<bool> used(arcs_.size(), false);
    for (int a0 : adj_[src_]) {
      if (arcs_[a0].flow != 1) continue;
      std::vector<int> path;
      int v = arcs_[a0].to;
      while (v != dst_) {
        bool advanced = false;
        for (int a : adj_[v]) {
          const Arc& arc = arcs_[a];
          if (arc.edge_or_rev >= -1 && arc.flow == 1 && !used[a]) {
            used[a] = true;
            if (arc.edge_or_rev >= 0) path.push_back(arc.edge_or_rev);
            v = arc.to;
            advanced = true;
            break;
          }
        }
        if (!advanced) throw internal_error("flow decomposition stalled");
      }
      paths.push_back(std::move(path));
    }
    return paths;
  }

 private:
  static constexpr int kBigCap = 1 << 24;

  struct Arc {
    int to;
    int cap;
    int flow = 0;
    int edge_or_rev;  // extended-edge index, -1 for super arcs, -2 for reverse arcs
  };

  void add_arc(int u, int v, int edge, int cap = 1) {
    adj_[u].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, cap, 0, edge});
    adj_[v].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, 0, 0, -2});
  }

  bool augment() {
    std::vector<int> via(adj_.size(), -1);
    std::queue<int> q;
    q.push(src_);
    via[src_] = -2;
    while (!q.empty() && via[dst_] == -1) {
      const int u = q.front();
      q.pop();
      for (int a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.cap - arc.flow > 0 && via[arc.to] == -1) {
          via[arc.to] = a;
          q.push(arc.to);
        }
      }
    }
    if (via[dst_] == -1) return false;
    for (int v = dst_; v != src_;) {
      const int a = via[v];
      arcs_[a].flow += 1;
      arcs_[a ^ 1].flow -= 1;
      v = arcs_[a ^ 1].to;
    }
    return true;
  }

  const ExtendedNetwork& xn_;
  int src_, dst_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace detail

// Max flow from a super source feeding the given sigma edges to a super sink
// draining the given tau edges; every edge has capacity one. The search stops
// once `cap` augmenting paths are found.
inline int max_flow_value(const ExtendedNetwork& xn, const std::vector<int>& source_edges,
                          const std::vector<int>& sink_edges, int cap) {
  detail::UnitFlow flow(xn);
  for (int e : source_edges) flow.attach_source(e);
  for (int e : sink_edges) flow.attach_sink(e);
  return flow.run(cap);
}

// Max flow between the session's real endpoints; the unit-capacity virtual
// edges are bypassed so they do not cap the value at one.
inline int session_min_cut(const ExtendedNetwork& xn, int i) {
  detail::UnitFlow flow(xn);
  flow.attach_source_node(xn.base().sessions()[i - 1].source);
  flow.attach_sink_node(xn.base().sessions()[i - 1].sink);
  return flow.run(std::numeric_limits<int>::max());
}

// A pair of edge-disjoint paths found by the flow, as extended-edge indices.
struct PathPair {
  std::array<std::vector<int>, 2> paths;
};

// Decides whether some pair in P_ab x P_pq or P_aq x P_pb is edge-disjoint
// (both pairings are covered by one flow: two unit augmenting paths from
// {sigma_b, sigma_q} to {tau_a, tau_p} realize one of them). Sessions 1-based.
inline std::optional<PathPair> find_disjoint_pair(const ExtendedNetwork& xn, int a, int b, int p,
                                                  int q) {
  if (a == p || b == q) throw param_error("disjoint-pair test needs a != p and b != q");
  for (auto [i, j] : {std::pair{a, b}, {p, q}, {a, q}, {p, b}})
    if (!xn.pathset_nonempty(i, j)) throw zero_transfer(i, j);
  detail::UnitFlow flow(xn);
  flow.attach_source(xn.sigma(b - 1));
  flow.attach_source(xn.sigma(q - 1));
  flow.attach_sink(xn.tau(a - 1));
  flow.attach_sink(xn.tau(p - 1));
  if (flow.run(2) < 2) return std::nullopt;
  auto paths = flow.flow_paths();
  if (paths.size() != 2) throw internal_error("expected a 2-path decomposition");
  return PathPair{{std::move(paths[0]), std::move(paths[1])}};
}

inline bool disjoint_pair_exists(const ExtendedNetwork& xn, int a, int b, int p, int q) {
  return find_disjoint_pair(xn, a, b, p, q).has_value();
}

// The ratio functions whose numerators/denominators are the 2x2 products
// m_ab m_pq / (m_aq m_pb); eta is the three-fold ratio tying them together
// (p_i q_i = eta).
enum class RatioTag { p1, p2, p3, q1, q2, q3, eta };

struct RatioQuad {
  int a, b, p, q;  // 1-based
};

inline RatioQuad ratio_quad(RatioTag tag) {
  switch (tag) {
    case RatioTag::p1: return {3, 1, 1, 2};
    case RatioTag::p2: return {3, 1, 2, 2};
    case RatioTag::p3: return {1, 2, 3, 3};
    case RatioTag::q1: return {1, 1, 2, 3};
    case RatioTag::q2: return {1, 2, 2, 3};
    case RatioTag::q3: return {3, 1, 2, 3};
    case RatioTag::eta: break;
  }
  throw param_error("eta has no defining quadruple");
}

inline RatioTag p_tag(int i) { return std::array{RatioTag::p1, RatioTag::p2, RatioTag::p3}[i - 1]; }
inline RatioTag q_tag(int i) { return std::array{RatioTag::q1, RatioTag::q2, RatioTag::q3}[i - 1]; }

}  // namespace pbna
