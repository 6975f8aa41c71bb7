#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equivote/bitset.hpp"

namespace equivote::graphs {

inline constexpr int kMaxVertices = 4096;

// Simple undirected graph, one adjacency bitset per vertex.
struct Graph {
  int n = 0;
  std::vector<Bitset> adj;

  Graph() = default;
  explicit Graph(int n_) : n(n_), adj(n_, Bitset(n_)) {
    if (n_ < 0 || n_ > kMaxVertices) throw std::invalid_argument("vertex count out of range");
  }

  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop");
    adj[u].set(v);
    adj[v].set(u);
  }
  bool has_edge(int u, int v) const { return adj[u].test(v); }
  int degree(int v) const { return adj[v].count(); }
  int edge_count() const {
    int s = 0;
    for (const auto& row : adj) s += row.count();
    return s / 2;
  }
  // Degree if regular, nullopt otherwise.
  std::optional<int> regular_degree() const {
    if (n == 0) return std::nullopt;
    int d = degree(0);
    for (int v = 1; v < n; ++v)
      if (degree(v) != d) return std::nullopt;
    return d;
  }
  bool well_formed() const {  // symmetric, irreflexive
    for (int v = 0; v < n; ++v) {
      if (adj[v].size() != n || adj[v].test(v)) return false;
      for (int u = adj[v].find_first(); u >= 0; u = adj[v].find_next(u))
        if (!adj[u].test(v)) return false;
    }
    return true;
  }
  bool operator==(const Graph&) const = default;
};

struct BallFamily {
  int n = 0;
  int r = 1;
  std::vector<Bitset> balls;  // balls[v] = closed ball B_r(v)
  bool all_distinct = false;
};

struct CodegreeStats {
  bool regular = false;
  int degree = -1;       // meaningful when regular
  int min = 0, max = 0;  // over unordered pairs u != v of |B1(u) ∩ B1(v)|
  double mean = 0.0;
  double reference = 0.0;  // d^2 / n
  double max_ratio = 0.0;  // max / reference
};

// Single-source shortest paths; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, int src);

bool is_connected(const Graph& g);

struct Metric {
  bool connected = false;
  int diameter = -1;  // -1 when disconnected
  int radius = -1;    // ceil(diameter / 2)
};
Metric metric(const Graph& g);

// Throw std::invalid_argument on a disconnected graph.
int diameter(const Graph& g);
int radius(const Graph& g);

BallFamily balls(const Graph& g, int r = 1);

struct BallSquare {
  Graph graph;           // edges {u,v} for v in B_r(u) \ {u}
  bool complete = false;  // diameter 1: the trivial case
};
BallSquare ball_square(const Graph& g, int r);

CodegreeStats codegree_stats(const Graph& g);

// Configuration model with rejection, then edge-switch repair once the
// pairing budget runs out. Deterministic for a fixed seed.
Graph gen_random_regular(int n, int d, uint64_t seed);

Graph gen_gnp(int n, double p, uint64_t seed);

// Text format: first line "n m", then m lines "u v" (0-based, u < v, sorted).
std::string to_text(const Graph& g);
Graph from_text(const std::string& text);

}  // namespace equivote::graphs
