#include "equivote/graphs.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "equivote/rng.hpp"

namespace equivote::graphs {

std::vector<int> bfs_distances(const Graph& g, int src) {
  std::vector<int> dist(g.n, -1);
  Bitset visited(g.n), frontier(g.n);
  visited.set(src);
  frontier.set(src);
  dist[src] = 0;
  int level = 0;
  while (frontier.any()) {
    Bitset next(g.n);
    frontier.for_each([&](int v) { next |= g.adj[v]; });
    next &= visited.complement();
    ++level;
    next.for_each([&](int v) { dist[v] = level; });
    visited |= next;
    frontier = next;
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  for (int d : bfs_distances(g, 0))
    if (d < 0) return false;
  return true;
}

Metric metric(const Graph& g) {
  Metric m;
  if (g.n == 0) return {true, 0, 0};
  int diam = 0;
  for (int v = 0; v < g.n; ++v) {
    for (int d : bfs_distances(g, v)) {
      if (d < 0) return m;  // disconnected
      diam = std::max(diam, d);
    }
  }
  m.connected = true;
  m.diameter = diam;
  m.radius = (diam + 1) / 2;
  return m;
}

int diameter(const Graph& g) {
  Metric m = metric(g);
  if (!m.connected) throw std::invalid_argument("diameter: graph is disconnected");
  return m.diameter;
}

int radius(const Graph& g) {
  Metric m = metric(g);
  if (!m.connected) throw std::invalid_argument("radius: graph is disconnected");
  return m.radius;
}

BallFamily balls(const Graph& g, int r) {
  BallFamily f;
  f.n = g.n;
  f.r = r;
  f.balls.reserve(g.n);
  if (r == 1) {
    for (int v = 0; v < g.n; ++v) {
      Bitset b = g.adj[v];
      b.set(v);
      f.balls.push_back(std::move(b));
    }
  } else {
    for (int v = 0; v < g.n; ++v) {
      Bitset b(g.n);
      auto dist = bfs_distances(g, v);
      for (int u = 0; u < g.n; ++u)
        if (dist[u] >= 0 && dist[u] <= r) b.set(u);
      f.balls.push_back(std::move(b));
    }
  }
  std::unordered_set<Bitset, BitsetHash> seen(f.balls.begin(), f.balls.end());
  f.all_distinct = (int)seen.size() == g.n;
  return f;
}

BallSquare ball_square(const Graph& g, int r) {
  if (!is_connected(g)) throw std::invalid_argument("ball_square: graph is disconnected");
  BallSquare out;
  out.graph = Graph(g.n);
  BallFamily f = balls(g, r);
  for (int v = 0; v < g.n; ++v) {
    Bitset row = f.balls[v];
    row.reset(v);
    out.graph.adj[v] = row;
  }
  // d(u,v) <= r is symmetric, so rows already agree; assert in debug only.
  out.complete = g.n > 1 && metric(out.graph).diameter == 1;
  return out;
}

CodegreeStats codegree_stats(const Graph& g) {
  CodegreeStats s;
  auto deg = g.regular_degree();
  s.regular = deg.has_value();
  s.degree = deg.value_or(-1);
  if (g.n < 2) return s;
  BallFamily f = balls(g, 1);
  long long total = 0;
  int mn = g.n + 1, mx = 0;
  for (int u = 0; u < g.n; ++u) {
    for (int v = u + 1; v < g.n; ++v) {
      int c = f.balls[u].and_count(f.balls[v]);
      total += c;
      mn = std::min(mn, c);
      mx = std::max(mx, c);
    }
  }
  long long pairs = (long long)g.n * (g.n - 1) / 2;
  s.min = mn;
  s.max = mx;
  s.mean = (double)total / (double)pairs;
  if (s.regular && s.degree > 0) {
    s.reference = (double)s.degree * s.degree / g.n;
    s.max_ratio = s.max / s.reference;
  }
  return s;
}

namespace {

// One configuration-model attempt: pair up stubs, fail on loops/multi-edges.
bool pairing_attempt(int n, int d, Rng& rng, Graph& out) {
  std::vector<int> stubs;
  stubs.reserve((size_t)n * d);
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) stubs.push_back(v);
  rng.shuffle(stubs);
  Graph g(n);
  for (size_t i = 0; i < stubs.size(); i += 2) {
    int u = stubs[i], v = stubs[i + 1];
    if (u == v || g.has_edge(u, v)) return false;
    g.add_edge(u, v);
  }
  out = std::move(g);
  return true;
}

// Pair all stubs into a multigraph, then repair loops and duplicate edges
// with degree-preserving double edge switches.
Graph pairing_with_repair(int n, int d, Rng& rng) {
  std::vector<int> stubs;
  for (int v = 0; v < n; ++v)
    for (int i = 0; i < d; ++i) stubs.push_back(v);
  rng.shuffle(stubs);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(stubs.size() / 2);
  for (size_t i = 0; i < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});

  auto key = [n](int u, int v) { return (int64_t)std::min(u, v) * n + std::max(u, v); };
  auto defective = [&](const std::vector<std::pair<int, int>>& es, std::vector<size_t>& bad) {
    bad.clear();
    std::unordered_set<int64_t> seen;
    for (size_t i = 0; i < es.size(); ++i) {
      auto [u, v] = es[i];
      if (u == v || !seen.insert(key(u, v)).second) bad.push_back(i);
    }
  };

  std::vector<size_t> bad;
  const uint64_t cap = 2'000'000;
  for (uint64_t iter = 0; iter < cap; ++iter) {
    defective(edges, bad);
    if (bad.empty()) {
      Graph g(n);
      for (auto [u, v] : edges) g.add_edge(u, v);
      return g;
    }
    size_t i = bad[rng.index((int)bad.size())];
    size_t j = rng.below(edges.size());
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, e] = edges[j];
    // Two ways to rewire; pick one at random, keep only if it removes the
    // defect at i without creating an obvious new one.
    std::pair<int, int> p1, p2;
    if (rng.below(2) == 0) {
      p1 = {a, c};
      p2 = {b, e};
    } else {
      p1 = {a, e};
      p2 = {b, c};
    }
    if (p1.first == p1.second || p2.first == p2.second) continue;
    std::unordered_set<int64_t> seen;
    bool clash = false;
    for (size_t t = 0; t < edges.size(); ++t) {
      if (t == i || t == j) continue;
      auto [u, v] = edges[t];
      if (u != v) seen.insert(key(u, v));
    }
    if (!seen.insert(key(p1.first, p1.second)).second) clash = true;
    if (!seen.insert(key(p2.first, p2.second)).second) clash = true;
    if (clash) continue;
    edges[i] = p1;
    edges[j] = p2;
  }
  throw std::runtime_error("gen_random_regular: repair did not converge (infeasible parameters?)");
}

}  // namespace

Graph gen_random_regular(int n, int d, uint64_t seed) {
  if (n <= 0 || n > kMaxVertices) throw std::invalid_argument("gen_random_regular: bad n");
  if (d <= 0 || d >= n) throw std::invalid_argument("gen_random_regular: need 0 < d < n");
  if ((int64_t)n * d % 2 != 0) throw std::invalid_argument("gen_random_regular: nd must be even");
  Rng rng(seed);
  // Rejection while the pairing budget lasts (~100*n*d stub pairings), then repair.
  const uint64_t pairing_budget = 100ull * n * d;
  uint64_t used = 0;
  Graph g;
  while (used + (uint64_t)n * d / 2 <= pairing_budget) {
    used += (uint64_t)n * d / 2;
    if (pairing_attempt(n, d, rng, g)) return g;
  }
  return pairing_with_repair(n, d, rng);
}

Graph gen_gnp(int n, double p, uint64_t seed) {
  if (n < 0 || n > kMaxVertices) throw std::invalid_argument("gen_gnp: bad n");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_gnp: p outside [0,1]");
  Rng rng(seed);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

std::string to_text(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    g.adj[u].for_each([&](int v) {
      if (u < v) edges.push_back({u, v});
    });
  std::sort(edges.begin(), edges.end());
  std::ostringstream os;
  os << g.n << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) os << u << ' ' << v << '\n';
  return os.str();
}

Graph from_text(const std::string& text) {
  std::istringstream is(text);
  int n = -1;
  long long m = -1;
  if (!(is >> n >> m)) throw std::invalid_argument("graph parse: missing header");
  if (n < 0 || n > kMaxVertices || m < 0) throw std::invalid_argument("graph parse: bad header");
  Graph g(n);
  for (long long i = 0; i < m; ++i) {
    int u, v;
    if (!(is >> u >> v)) throw std::invalid_argument("graph parse: truncated edge list");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw std::invalid_argument("graph parse: bad edge");
    if (g.has_edge(u, v)) throw std::invalid_argument("graph parse: duplicate edge");
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace equivote::graphs
