#include <cmath>
#include <functional>
#include <set>

#include "doctest.h"
#include "equivote/graphs.hpp"
#include "equivote/rng.hpp"

using namespace equivote;
using namespace equivote::graphs;

namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);        // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);              // spokes
  }
  return g;
}

// Every connected graph on <= 5 vertices, by edge mask.
std::vector<Graph> small_connected_graphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::vector<Graph> out;
  for (uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    Graph g(n);
    for (size_t e = 0; e < pairs.size(); ++e)
      if (mask >> e & 1) g.add_edge(pairs[e].first, pairs[e].second);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

TEST_CASE("bfs and metric on named graphs") {
  CHECK(diameter(cycle(5)) == 2);
  CHECK(radius(cycle(5)) == 1);
  CHECK(diameter(path(4)) == 3);
  CHECK(radius(path(4)) == 2);
  CHECK(diameter(complete(5)) == 1);
  CHECK(radius(complete(5)) == 1);
  CHECK(diameter(cycle(7)) == 3);
  CHECK(radius(cycle(7)) == 2);

  Graph g(4);
  g.add_edge(0, 1);  // disconnected
  CHECK_FALSE(metric(g).connected);
  CHECK_THROWS_AS(diameter(g), std::invalid_argument);
}

TEST_CASE("radius equals the smallest r with pairwise intersecting balls") {
  // Exhaustive over small connected graphs, plus a few named ones.
  std::vector<Graph> corpus = small_connected_graphs(4);
  auto g5 = small_connected_graphs(5);
  corpus.insert(corpus.end(), g5.begin(), g5.end());
  corpus.push_back(cycle(7));
  corpus.push_back(path(6));
  corpus.push_back(petersen());
  for (const auto& g : corpus) {
    int rad = radius(g);
    auto pairwise_intersecting = [&](int r) {
      BallFamily f = balls(g, r);
      for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
          if (!f.balls[u].intersects(f.balls[v])) return false;
      return true;
    };
    CHECK(pairwise_intersecting(rad));
    if (rad > 0) CHECK_FALSE(pairwise_intersecting(rad - 1));
  }
}

TEST_CASE("balls") {
  BallFamily k5 = balls(complete(5), 1);
  for (const auto& b : k5.balls) CHECK(b == Bitset::full(5));
  CHECK_FALSE(k5.all_distinct);

  BallFamily c5 = balls(cycle(5), 1);
  CHECK(c5.all_distinct);
  for (int v = 0; v < 5; ++v) {
    CHECK(c5.balls[v].count() == 3);
    CHECK(c5.balls[v].test(v));
  }
}

TEST_CASE("ball_square") {
  // 7-cycle at its radius 2: each vertex reaches distance <= 2, 4-regular.
  auto sq = ball_square(cycle(7), 2);
  CHECK_FALSE(sq.complete);
  CHECK(sq.graph.regular_degree() == 4);
  CHECK(radius(sq.graph) == 1);

  // Any diameter-2 graph is unchanged at r = 1.
  Graph c5 = cycle(5);
  CHECK(ball_square(c5, 1).graph == c5);

  // At r = 1 the edge set is unchanged, so P3 stays P3.
  CHECK(ball_square(path(3), 1).graph == path(3));
  // Covering the whole diameter yields the complete graph: flagged trivial.
  auto tri = ball_square(path(3), 2);
  CHECK(tri.complete);
  CHECK(ball_square(cycle(5), 2).complete);

  // ball_square(G, rad(G)) always has radius 1.
  for (const auto& g : {cycle(9), path(5), petersen()}) {
    auto s = ball_square(g, radius(g));
    CHECK(radius(s.graph) == 1);
  }
}

TEST_CASE("codegree stats") {
  CodegreeStats k5 = codegree_stats(complete(5));
  CHECK(k5.min == 5);
  CHECK(k5.max == 5);

  CodegreeStats pet = codegree_stats(petersen());
  CHECK(pet.regular);
  CHECK(pet.degree == 3);
  CHECK(pet.max == 2);  // adjacent pairs share exactly {u, v}
  CHECK(pet.min == 1);  // non-adjacent pairs share their unique common neighbor
}

TEST_CASE("gen_random_regular") {
  Graph g = gen_random_regular(11, 4, 123);
  CHECK(g.well_formed());
  CHECK(g.regular_degree() == 4);
  CHECK(gen_random_regular(11, 4, 123) == g);  // deterministic

  CHECK(gen_random_regular(4, 3, 5) == complete(4));  // K4 is the only cubic graph on 4 vertices
  CHECK_THROWS_AS(gen_random_regular(11, 3, 1), std::invalid_argument);  // nd odd

  // Dense case goes through the repair path.
  Graph dense = gen_random_regular(101, 48, 7);
  CHECK(dense.well_formed());
  CHECK(dense.regular_degree() == 48);
}

TEST_CASE("gen_random_regular covers every cubic class on 8 vertices") {
  // Invariant fingerprint: (sorted codegree vector, diameter or -1, connected).
  auto fingerprint = [](const Graph& g) {
    std::vector<int> cd;
    BallFamily f = balls(g, 1);
    for (int u = 0; u < g.n; ++u)
      for (int v = u + 1; v < g.n; ++v) cd.push_back(f.balls[u].and_count(f.balls[v]));
    std::sort(cd.begin(), cd.end());
    Metric m = metric(g);
    cd.push_back(m.connected ? m.diameter : -1);
    return cd;
  };
  // Exhaustively enumerate all labeled 3-regular graphs on 8 vertices.
  std::set<std::vector<int>> all_classes;
  {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) pairs.push_back({i, j});
    std::vector<int> deg(8, 0);
    Graph g(8);
    long count = 0;
    std::function<void(size_t)> rec = [&](size_t e) {
      if (e == pairs.size()) {
        for (int d : deg)
          if (d != 3) return;
        all_classes.insert(fingerprint(g));
        ++count;
        return;
      }
      auto [u, v] = pairs[e];
      int left = (int)pairs.size() - (int)e;
      int need = 0;
      for (int d : deg) need += 3 - d;
      if (need > 2 * left) return;  // cannot finish
      rec(e + 1);
      if (deg[u] < 3 && deg[v] < 3) {
        g.add_edge(u, v);
        ++deg[u];
        ++deg[v];
        rec(e + 1);
        --deg[u];
        --deg[v];
        g.adj[u].reset(v);
        g.adj[v].reset(u);
      }
    };
    rec(0);
    CHECK(count == 19355);  // labeled 3-regular graphs on 8 vertices
  }
  std::set<std::vector<int>> seen;
  for (int t = 0; t < 10000; ++t) seen.insert(fingerprint(gen_random_regular(8, 3, 1000 + t)));
  CHECK(seen == all_classes);
}

TEST_CASE("gen_gnp") {
  CHECK(gen_gnp(20, 0.0, 1).edge_count() == 0);
  CHECK(gen_gnp(20, 1.0, 1) == complete(20));
  Graph g = gen_gnp(200, 0.2, 99);
  CHECK(g.well_formed());
  double mean = 0.2 * (200.0 * 199.0 / 2.0);
  double sd = std::sqrt(mean * 0.8);
  CHECK(std::abs(g.edge_count() - mean) < 4 * sd);
  CHECK(gen_gnp(200, 0.2, 99) == g);
}

TEST_CASE("graph text format round trip") {
  for (const auto& g : {cycle(5), petersen(), gen_gnp(30, 0.3, 4), Graph(3)}) {
    std::string t = to_text(g);
    CHECK(from_text(t) == g);
    CHECK(to_text(from_text(t)) == t);
  }
  CHECK_THROWS_AS(from_text("3 1\n0 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_text("3 2\n0 1\n0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_text(""), std::invalid_argument);
}

TEST_CASE("generator transforms keep adjacency well formed") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    int n = 5 + rng.index(20);
    Graph g = gen_gnp(n, 0.3, rng.next());
    CHECK(g.well_formed());
    if (is_connected(g)) {
      auto sq = ball_square(g, radius(g));
      CHECK(sq.graph.well_formed());
      CHECK(radius(sq.graph) == 1);
    }
  }
}
