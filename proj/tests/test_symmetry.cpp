#include <algorithm>
#include <set>

#include "doctest.h"
#include "equivote/graphs.hpp"
#include "equivote/rng.hpp"
#include "equivote/symmetry.hpp"

using namespace equivote;
using namespace equivote::graphs;
using namespace equivote::symmetry;

namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
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
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, 5 + i);
  }
  return g;
}

// The Frucht graph (LCF [-5,-2,-4,2,5,-2,2,5,-2,-5,4,2]): cubic, 12 vertices,
// trivial automorphism group.
Graph frucht() {
  Graph g(12);
  for (int i = 0; i < 12; ++i) g.add_edge(i, (i + 1) % 12);
  int chords[6][2] = {{0, 7}, {1, 11}, {2, 10}, {3, 5}, {4, 9}, {6, 8}};
  for (auto [u, v] : chords) g.add_edge(u, v);
  return g;
}

// Direct membership oracle: sigma maps edges to edges.
bool edge_preserving(const Graph& g, const Permutation& s) {
  for (int v = 0; v < g.n; ++v)
    if (s.apply(g.adj[v]) != g.adj[s(v)]) return false;
  return true;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace

TEST_CASE("permutation algebra") {
  Permutation id = Permutation::identity(4);
  CHECK(id.valid());
  CHECK(id.is_identity());
  Permutation rot({1, 2, 3, 0});
  CHECK(rot.valid());
  CHECK(rot.inverse().after(rot) == id);
  CHECK(rot.after(rot).img == std::vector<int>{2, 3, 0, 1});
  CHECK(rot.support().size() == 4);
  CHECK_FALSE(Permutation({0, 0, 1, 2}).valid());
}

TEST_CASE("defect basics") {
  Graph c5 = cycle(5);
  Permutation id = Permutation::identity(5);
  CHECK(defect(c5, id, id).graph_defect == 0);
  CHECK(defect(c5, id, id).moved == 0);

  Permutation rot({1, 2, 3, 4, 0});
  CHECK(defect(c5, rot, rot).graph_defect == 0);  // rotation is an automorphism
  CHECK(defect(c5, rot, rot).moved == 5);

  Permutation swap01({1, 0, 2, 3, 4});
  CHECK(defect(c5, swap01, id).graph_defect > 0);

  // Defect never exceeds the sum of the two ball sizes.
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Graph g = gen_gnp(9, 0.4, rng.next());
    auto [s, p] = sample_moved_pair(9, 2 + rng.index(8), rng.next());
    DefectReport r = defect(g, s, p);
    for (int v = 0; v < g.n; ++v) {
      CHECK(r.per_vertex[v] >= 0);
      CHECK(r.per_vertex[v] <= g.degree(v) + 1 + g.degree(p(v)) + 1);
    }
  }
}

TEST_CASE("graph_aut on named graphs") {
  AutGroup c5 = graph_aut(cycle(5));
  CHECK(c5.order == 10);  // dihedral
  CHECK(c5.transitive());

  AutGroup k5 = graph_aut(complete(5));
  CHECK(k5.order == 120);
  CHECK(k5.transitive());

  AutGroup pet = graph_aut(petersen());
  CHECK(pet.order == 120);
  CHECK(pet.transitive());

  AutGroup fr = graph_aut(frucht());
  CHECK(fr.order == 1);
  CHECK(fr.trivial());
  CHECK_FALSE(fr.transitive());

  // Generators actually act as automorphisms, and the enumerated group has
  // the reported order.
  for (const auto& gen : c5.generators) CHECK(edge_preserving(cycle(5), gen));
  CHECK(enumerate_group(c5.generators, 5).size() == c5.order);
  CHECK(enumerate_group(k5.generators, 5).size() == k5.order);
  CHECK(enumerate_group(pet.generators, 10).size() == pet.order);
}

TEST_CASE("graph_aut agrees with the defect characterization exhaustively") {
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    int n = 4 + rng.index(3);  // 4..6
    Graph g = gen_gnp(n, 0.45, rng.next());
    AutGroup group = graph_aut(g);
    std::set<std::vector<int>> members;
    for (const auto& p : enumerate_group(group.generators, n)) members.insert(p.img);
    uint64_t direct = 0;
    for (const auto& s : all_permutations(n)) {
      bool is_aut = defect(g, s, s).graph_defect == 0;
      CHECK(is_aut == edge_preserving(g, s));
      CHECK(is_aut == (members.count(s.img) > 0));
      direct += is_aut;
    }
    CHECK(direct == group.order);
  }
}

TEST_CASE("ball_aut contains graph_aut and matches the witness oracle") {
  Rng rng(23);
  for (int t = 0; t < 6; ++t) {
    int n = 4 + rng.index(3);
    Graph g = gen_gnp(n, 0.5, rng.next());
    AutGroup ga = graph_aut(g);
    AutGroup ba = ball_aut(g);
    std::set<std::vector<int>> ball_members;
    for (const auto& p : enumerate_group(ba.generators, n)) ball_members.insert(p.img);
    uint64_t witness_count = 0;
    for (const auto& s : all_permutations(n)) {
      auto w = zero_defect_witness(g, s);
      bool in_ball = ball_members.count(s.img) > 0;
      CHECK(w.has_value() == in_ball);
      if (w) {
        CHECK(defect(g, s, *w).graph_defect == 0);
        ++witness_count;
      }
      if (defect(g, s, s).graph_defect == 0) CHECK(in_ball);  // aut(G) subset of aut(B1(G))
    }
    CHECK(witness_count == ba.order);
    CHECK(ba.order % ga.order == 0);
  }
}

TEST_CASE("ball_aut with duplicate balls uses multiset semantics") {
  // K5 has all balls equal to V: every permutation is a ball automorphism.
  AutGroup k5 = ball_aut(complete(5));
  CHECK(k5.order == 120);
  // Witness exists for arbitrary sigma.
  Permutation s({2, 0, 4, 1, 3});
  auto w = zero_defect_witness(complete(5), s);
  REQUIRE(w.has_value());
  CHECK(defect(complete(5), s, *w).graph_defect == 0);
}

TEST_CASE("vertex transitivity flags") {
  CHECK(is_vertex_transitive(cycle(8)));
  CHECK(is_vertex_transitive(complete(6)));
  CHECK_FALSE(is_vertex_transitive(frucht()));
  // 3-regular but not vertex-transitive: two triangles joined by a perfect
  // matching to a hexagon pattern with mixed girth. Use the prism vs K4 trick:
  Graph g(8);  // cube with one face rewired: 3-regular, not vertex-transitive
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 0);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  g.add_edge(6, 7);
  g.add_edge(7, 4);
  g.add_edge(0, 4);
  g.add_edge(1, 5);
  g.add_edge(2, 6);
  g.add_edge(3, 7);
  // This is the cube (vertex-transitive); rewire to break transitivity:
  Graph h = g;
  h.adj[3].reset(7);
  h.adj[7].reset(3);
  h.adj[0].reset(4);
  h.adj[4].reset(0);
  h.add_edge(0, 7);
  h.add_edge(3, 4);
  CHECK(h.regular_degree() == 3);
  AutGroup ha = graph_aut(h);
  CHECK(ha.order > 1);
  // Regularity does not imply transitivity in general; this one may or may
  // not be transitive, so only assert the implication direction on samples.
  Rng rng(31);
  int seen_nontransitive_regular = 0;
  for (int t = 0; t < 40; ++t) {
    Graph r = gen_random_regular(9, 4, rng.next());
    if (!graph_aut(r).transitive()) ++seen_nontransitive_regular;
  }
  CHECK(seen_nontransitive_regular > 0);
}

TEST_CASE("sample_moved_pair hits the requested support size") {
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    int n = 5 + rng.index(20);
    int k = 2 + rng.index(n - 1);
    auto [s, p] = sample_moved_pair(n, k, rng.next());
    CHECK(s.valid());
    CHECK(p.valid());
    int moved = 0;
    for (int v = 0; v < n; ++v)
      if (s(v) != v || p(v) != v) ++moved;
    CHECK(moved == k);
  }
  CHECK_THROWS_AS(sample_moved_pair(5, 1, 1), std::invalid_argument);
  // k = 2: a transposition in at least one of the two.
  auto [s2, p2] = sample_moved_pair(6, 2, 9);
  CHECK((!s2.is_identity() || !p2.is_identity()));
}

TEST_CASE("zero_defect_witness examples") {
  // sigma in aut(G): pi = sigma works, witness must exist.
  Graph c5 = cycle(5);
  Permutation refl({0, 4, 3, 2, 1});
  CHECK(defect(c5, refl, refl).graph_defect == 0);
  CHECK(zero_defect_witness(c5, refl).has_value());
  // A transposition on the 5-cycle is not a ball automorphism.
  Permutation swap01({1, 0, 2, 3, 4});
  CHECK_FALSE(zero_defect_witness(c5, swap01).has_value());
}

TEST_CASE("automorphism order saturates instead of overflowing") {
  AutGroup big = graph_aut(Graph(26));  // empty graph: S_26, 26! > 2^64
  CHECK(big.order_overflow);
}
