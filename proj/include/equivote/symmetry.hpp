#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "equivote/bitset.hpp"
#include "equivote/graphs.hpp"

namespace equivote::symmetry {

struct Permutation {
  std::vector<int> img;  // img[v] = image of v

  Permutation() = default;
  explicit Permutation(std::vector<int> image) : img(std::move(image)) {}
  static Permutation identity(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return Permutation(std::move(v));
  }

  int n() const { return (int)img.size(); }
  int operator()(int v) const { return img[v]; }
  bool valid() const;
  bool is_identity() const {
    for (int i = 0; i < n(); ++i)
      if (img[i] != i) return false;
    return true;
  }
  Permutation inverse() const {
    std::vector<int> inv(img.size());
    for (int i = 0; i < n(); ++i) inv[img[i]] = i;
    return Permutation(std::move(inv));
  }
  // (a.after(b))(v) = a(b(v))
  Permutation after(const Permutation& b) const {
    std::vector<int> c(img.size());
    for (int i = 0; i < n(); ++i) c[i] = img[b.img[i]];
    return Permutation(std::move(c));
  }
  Bitset apply(const Bitset& s) const { return s.permuted(img); }
  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < n(); ++i)
      if (img[i] != i) s.push_back(i);
    return s;
  }
  bool operator==(const Permutation&) const = default;
  bool operator<(const Permutation& o) const { return img < o.img; }
};

struct DefectReport {
  std::vector<int> per_vertex;  // D_{sigma,pi}(v)
  int graph_defect = 0;         // max over v
  int moved = 0;                // |U|, vertices moved by sigma or pi
};

DefectReport defect(const graphs::Graph& g, const Permutation& sigma, const Permutation& pi);

struct AutGroup {
  std::vector<Permutation> generators;  // identity omitted
  uint64_t order = 1;
  bool order_overflow = false;           // order exceeds uint64 (product saturated)
  std::vector<std::vector<int>> orbits;  // partition of the vertex set
  bool exhausted = false;                // search budget ran out; order is a lower bound

  bool trivial() const { return order == 1 && !order_overflow && !exhausted; }
  bool transitive() const { return orbits.size() == 1; }
};

// Work budget for automorphism searches, in abstract search steps. Unlike a
// wall-clock timeout this keeps reruns bit-identical at any thread count.
inline constexpr uint64_t kDefaultAutBudget = 50'000'000;

AutGroup graph_aut(const graphs::Graph& g, uint64_t budget = kDefaultAutBudget);

// Automorphisms of the ball family B_r(G): permutations sigma admitting a pi
// with sigma(B_r(v)) = B_r(pi(v)) for all v (multiset semantics when balls
// coincide).
AutGroup ball_aut(const graphs::Graph& g, int r = 1, uint64_t budget = kDefaultAutBudget);

bool is_vertex_transitive(const graphs::Graph& g, uint64_t budget = kDefaultAutBudget);
inline bool is_asymmetric(const AutGroup& g) { return g.trivial(); }

// pi with D_{sigma,pi}(G) = 0, if one exists (bipartite matching between
// image balls and balls).
std::optional<Permutation> zero_defect_witness(const graphs::Graph& g, const Permutation& sigma);

// Random (sigma, pi) with |{v : sigma(v) != v or pi(v) != v}| = k exactly.
std::pair<Permutation, Permutation> sample_moved_pair(int n, int k, uint64_t seed);

// ---------------------------------------------------------------------------
// Search engine, shared by graph_aut / ball_aut / rule automorphisms.
// ---------------------------------------------------------------------------

struct EngineGraph {
  int n = 0;
  std::vector<Bitset> adj;
  std::vector<int> colors;  // initial node colors; automorphisms preserve them
};

struct ChainResult {
  // Stabilizer chain over base points 0..base_size-1 in order. The product of
  // level orbit sizes equals the order of the restriction of the automorphism
  // group to the first base_size nodes.
  std::vector<Permutation> generators;       // full-length node maps
  std::vector<uint64_t> level_orbit_sizes;   // one per base level (skips singletons)
  bool exhausted = false;
  uint64_t steps_used = 0;
};

ChainResult automorphism_chain(const EngineGraph& h, int base_size, uint64_t budget);

// Restrict a chain over a graph whose first base_size nodes are the points of
// interest down to an AutGroup on those points.
AutGroup project_chain(const ChainResult& chain, int base_size);

// Enumerate all elements of the group generated by `gens` (order must be
// small; used by tests and exhaustive checks).
std::vector<Permutation> enumerate_group(const std::vector<Permutation>& gens, int n, size_t cap = 1000000);

}  // namespace equivote::symmetry
