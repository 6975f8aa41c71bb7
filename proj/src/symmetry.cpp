#include "equivote/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "equivote/rng.hpp"

namespace equivote::symmetry {

bool Permutation::valid() const {
  std::vector<char> seen(img.size(), 0);
  for (int v : img) {
    if (v < 0 || v >= n() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

DefectReport defect(const graphs::Graph& g, const Permutation& sigma, const Permutation& pi) {
  if (sigma.n() != g.n || pi.n() != g.n) throw std::invalid_argument("defect: permutation size mismatch");
  graphs::BallFamily f = graphs::balls(g, 1);
  DefectReport r;
  r.per_vertex.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    Bitset image = sigma.apply(f.balls[v]);
    r.per_vertex[v] = image.xor_count(f.balls[pi(v)]);
    r.graph_defect = std::max(r.graph_defect, r.per_vertex[v]);
  }
  for (int v = 0; v < g.n; ++v)
    if (sigma(v) != v || pi(v) != v) ++r.moved;
  return r;
}

// ---------------------------------------------------------------------------
// Color refinement + backtracking engine
// ---------------------------------------------------------------------------

namespace {

struct BudgetOut {};

struct Budget {
  uint64_t remaining;
  uint64_t used = 0;
  void charge(uint64_t c) {
    used += c;
    if (c >= remaining) throw BudgetOut{};
    remaining -= c;
  }
};

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::vector<int> canonical_ranks(const std::vector<uint64_t>& keys) {
  std::vector<uint64_t> sorted(keys);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks(keys.size());
  for (size_t i = 0; i < keys.size(); ++i)
    ranks[i] = (int)(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return ranks;
}

class Engine {
 public:
  Engine(const EngineGraph& h, Budget& budget) : h_(h), budget_(budget) {
    std::vector<uint64_t> keys(h.n);
    for (int v = 0; v < h_.n; ++v) keys[v] = (uint64_t)h_.colors[v];
    base_colors_ = canonical_ranks(keys);
  }

  const std::vector<int>& base_colors() const { return base_colors_; }

  // One refinement round; returns (new colors, number of classes) and the
  // sorted key multiset used for divergence checks.
  void round(const std::vector<int>& c, std::vector<int>& out, std::vector<uint64_t>& sorted_keys) {
    const int n = h_.n;
    std::vector<uint64_t> keys(n);
    std::vector<int> cnt(n + 2, 0);
    std::vector<int> touched;
    uint64_t work = n;
    for (int v = 0; v < n; ++v) {
      touched.clear();
      h_.adj[v].for_each([&](int u) {
        if (cnt[c[u]]++ == 0) touched.push_back(c[u]);
      });
      work += touched.size() + (uint64_t)h_.adj[v].count() / 8;
      std::sort(touched.begin(), touched.end());
      uint64_t k = mix(0x2545f4914f6cdd1dull, (uint64_t)c[v]);
      for (int col : touched) {
        k = mix(k, (uint64_t)col);
        k = mix(k, (uint64_t)cnt[col]);
        cnt[col] = 0;
      }
      keys[v] = k;
    }
    budget_.charge(work);
    sorted_keys = keys;
    std::sort(sorted_keys.begin(), sorted_keys.end());
    out = canonical_ranks(keys);
  }

  int class_count(const std::vector<int>& c) const {
    int mx = -1;
    for (int x : c) mx = std::max(mx, x);
    return mx + 1;
  }

  // Refine dom/img colorings in lockstep until stable. False when the two
  // sides diverge (no extension possible).
  bool refine_pair(std::vector<int>& cd, std::vector<int>& ci) {
    // Normalize both to canonical ranks first so counts line up.
    {
      std::vector<uint64_t> kd(cd.begin(), cd.end()), ki(ci.begin(), ci.end());
      std::vector<uint64_t> sd(kd), si(ki);
      std::sort(sd.begin(), sd.end());
      std::sort(si.begin(), si.end());
      if (sd != si) return false;
      cd = canonical_ranks(kd);
      ci = canonical_ranks(ki);
    }
    int classes = class_count(cd);
    while (true) {
      std::vector<int> nd, ni;
      std::vector<uint64_t> sd, si;
      round(cd, nd, sd);
      round(ci, ni, si);
      if (sd != si) return false;
      int nc = class_count(nd);
      cd = std::move(nd);
      ci = std::move(ni);
      if (nc == classes) return true;
      classes = nc;
    }
  }

  // Find any automorphism consistent with the forced (dom -> img) pairs.
  std::optional<Permutation> find_extension(const std::vector<std::pair<int, int>>& forced) {
    std::vector<int> cd = base_colors_, ci = base_colors_;
    int step = 0;
    for (auto [b, t] : forced) {
      cd[b] = h_.n + step;
      ci[t] = h_.n + step;
      ++step;
    }
    if (!refine_pair(cd, ci)) return std::nullopt;
    return dfs(cd, ci, step);
  }

 private:
  std::optional<Permutation> dfs(const std::vector<int>& cd, const std::vector<int>& ci, int depth) {
    budget_.charge(4);
    const int n = h_.n;
    // Class sizes on the domain side.
    int classes = class_count(cd);
    std::vector<int> size(classes, 0);
    for (int x : cd) ++size[x];
    int target = -1, best = n + 1;
    for (int col = 0; col < classes; ++col)
      if (size[col] >= 2 && size[col] < best) {
        best = size[col];
        target = col;
      }
    if (target < 0) {
      // Discrete: map by color id, then verify exactly.
      std::vector<int> pos(classes, -1);
      for (int v = 0; v < n; ++v) pos[ci[v]] = v;
      std::vector<int> img(n);
      for (int v = 0; v < n; ++v) img[v] = pos[cd[v]];
      Permutation sigma(std::move(img));
      if (verify(sigma)) return sigma;
      return std::nullopt;
    }
    int x = -1;
    for (int v = 0; v < n; ++v)
      if (cd[v] == target) {
        x = v;
        break;
      }
    for (int w = 0; w < n; ++w) {
      if (ci[w] != target) continue;
      std::vector<int> cd2 = cd, ci2 = ci;
      cd2[x] = n + depth;
      ci2[w] = n + depth;
      if (!refine_pair(cd2, ci2)) continue;
      if (auto r = dfs(cd2, ci2, depth + 1)) return r;
    }
    return std::nullopt;
  }

  bool verify(const Permutation& sigma) {
    const int n = h_.n;
    uint64_t work = 0;
    for (int v = 0; v < n; ++v) {
      if (h_.colors[sigma(v)] != h_.colors[v]) return false;
      if (sigma.apply(h_.adj[v]) != h_.adj[sigma(v)]) return false;
      work += (uint64_t)n / 32 + 2;
    }
    budget_.charge(work);
    return true;
  }

  const EngineGraph& h_;
  Budget& budget_;
  std::vector<int> base_colors_;
};

// Forward closure suffices: generators have finite order, so a set closed
// under g is closed under g^{-1} as well.
void orbit_closure(std::vector<char>& in_orbit, const std::vector<Permutation>& gens) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t v = 0; v < in_orbit.size(); ++v) {
      if (!in_orbit[v]) continue;
      for (const auto& g : gens) {
        if (!in_orbit[g((int)v)]) {
          in_orbit[g((int)v)] = 1;
          grew = true;
        }
      }
    }
  }
}

}  // namespace

ChainResult automorphism_chain(const EngineGraph& h, int base_size, uint64_t budget) {
  ChainResult res;
  Budget b{budget == 0 ? 1 : budget};
  Engine engine(h, b);
  try {
    std::vector<int> stable = engine.base_colors(), stable_img = engine.base_colors();
    if (!engine.refine_pair(stable, stable_img))
      throw std::logic_error("refinement diverged on identical colorings");
    std::vector<std::pair<int, int>> prefix;
    for (int level = 0; level < base_size && level < h.n; ++level) {
      // Candidate images of `level` among nodes of its refined class.
      std::vector<int> cand;
      for (int w = 0; w < h.n; ++w)
        if (w != level && stable[w] == stable[level]) cand.push_back(w);
      uint64_t orbit_size = 1;
      if (!cand.empty()) {
        std::vector<char> in_orbit(h.n, 0);
        in_orbit[level] = 1;
        std::vector<Permutation> level_gens;
        for (int w : cand) {
          if (in_orbit[w]) continue;
          auto pairs = prefix;
          pairs.push_back({level, w});
          if (auto sigma = engine.find_extension(pairs)) {
            level_gens.push_back(*sigma);
            res.generators.push_back(std::move(*sigma));
            in_orbit[w] = 1;
            orbit_closure(in_orbit, level_gens);
          }
        }
        orbit_size = 0;
        for (char c : in_orbit) orbit_size += c;
      }
      res.level_orbit_sizes.push_back(orbit_size);
      prefix.push_back({level, level});
      // Maintain the prefix-individualized stable coloring incrementally.
      stable[level] = h.n + level;
      stable_img[level] = h.n + level;
      if (!engine.refine_pair(stable, stable_img))
        throw std::logic_error("refinement diverged on identity prefix");
    }
  } catch (const BudgetOut&) {
    res.exhausted = true;
  }
  res.steps_used = b.used;
  return res;
}

AutGroup project_chain(const ChainResult& chain, int base_size) {
  AutGroup g;
  g.exhausted = chain.exhausted;
  for (uint64_t s : chain.level_orbit_sizes) {
    if (s != 0 && g.order > ~uint64_t{0} / s) {
      g.order_overflow = true;
      break;
    }
    g.order *= s;
  }
  std::set<std::vector<int>> seen;
  for (const auto& full : chain.generators) {
    std::vector<int> restr(full.img.begin(), full.img.begin() + base_size);
    bool identity = true;
    for (int i = 0; i < base_size; ++i)
      if (restr[i] != i) {
        identity = false;
        break;
      }
    if (!identity && seen.insert(restr).second) g.generators.push_back(Permutation(std::move(restr)));
  }
  // Orbits via union-find over the generators.
  std::vector<int> parent(base_size);
  for (int i = 0; i < base_size; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& gen : g.generators)
    for (int v = 0; v < base_size; ++v) {
      int a = find(v), bb = find(gen(v));
      if (a != bb) parent[a] = bb;
    }
  std::unordered_map<int, std::vector<int>> groups;
  for (int v = 0; v < base_size; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> orbits;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    orbits.push_back(std::move(members));
  }
  std::sort(orbits.begin(), orbits.end());
  g.orbits = std::move(orbits);
  return g;
}

AutGroup graph_aut(const graphs::Graph& g, uint64_t budget) {
  EngineGraph h;
  h.n = g.n;
  h.adj = g.adj;
  h.colors.assign(g.n, 0);
  return project_chain(automorphism_chain(h, g.n, budget), g.n);
}

AutGroup ball_aut(const graphs::Graph& g, int r, uint64_t budget) {
  graphs::BallFamily f = graphs::balls(g, r);
  const int n = g.n;
  EngineGraph h;
  h.n = 2 * n;
  h.adj.assign(2 * n, Bitset(2 * n));
  h.colors.assign(2 * n, 0);
  for (int v = 0; v < n; ++v) h.colors[n + v] = 1;
  for (int v = 0; v < n; ++v)
    f.balls[v].for_each([&](int u) {
      h.adj[u].set(n + v);
      h.adj[n + v].set(u);
    });
  return project_chain(automorphism_chain(h, n, budget), n);
}

bool is_vertex_transitive(const graphs::Graph& g, uint64_t budget) {
  return graph_aut(g, budget).transitive();
}

std::optional<Permutation> zero_defect_witness(const graphs::Graph& g, const Permutation& sigma) {
  if (sigma.n() != g.n) throw std::invalid_argument("zero_defect_witness: size mismatch");
  graphs::BallFamily f = graphs::balls(g, 1);
  std::unordered_map<Bitset, std::vector<int>, BitsetHash> by_ball;
  for (int w = 0; w < g.n; ++w) by_ball[f.balls[w]].push_back(w);
  std::vector<std::vector<int>> cand(g.n);
  for (int v = 0; v < g.n; ++v) {
    auto it = by_ball.find(sigma.apply(f.balls[v]));
    if (it == by_ball.end()) return std::nullopt;
    cand[v] = it->second;
  }
  // Kuhn's augmenting paths: perfect matching v -> w over equal balls.
  std::vector<int> match_w(g.n, -1);
  std::vector<char> visited(g.n, 0);
  std::function<bool(int)> augment = [&](int v) -> bool {
    for (int w : cand[v]) {
      if (visited[w]) continue;
      visited[w] = 1;
      if (match_w[w] < 0 || augment(match_w[w])) {
        match_w[w] = v;
        return true;
      }
    }
    return false;
  };
  for (int v = 0; v < g.n; ++v) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(v)) return std::nullopt;
  }
  std::vector<int> pi(g.n);
  for (int w = 0; w < g.n; ++w) pi[match_w[w]] = w;
  return Permutation(std::move(pi));
}

std::pair<Permutation, Permutation> sample_moved_pair(int n, int k, uint64_t seed) {
  if (k < 2 || k > n) throw std::invalid_argument("sample_moved_pair: need 2 <= k <= n");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> u = rng.sample_indices(n, k);
    std::sort(u.begin(), u.end());
    std::vector<int> si(u), pi(u);
    rng.shuffle(si);
    rng.shuffle(pi);
    bool ok = true;
    for (int i = 0; i < k; ++i)
      if (si[i] == u[i] && pi[i] == u[i]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Permutation sigma = Permutation::identity(n), rho = Permutation::identity(n);
    for (int i = 0; i < k; ++i) {
      sigma.img[u[i]] = si[i];
      rho.img[u[i]] = pi[i];
    }
    return {sigma, rho};
  }
  throw std::runtime_error("sample_moved_pair: rejection sampling failed");
}

std::vector<Permutation> enumerate_group(const std::vector<Permutation>& gens, int n, size_t cap) {
  std::set<std::vector<int>> elems;
  std::vector<Permutation> queue{Permutation::identity(n)};
  elems.insert(queue[0].img);
  while (!queue.empty()) {
    Permutation cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& g : gens) {
      Permutation next = g.after(cur);
      if (elems.insert(next.img).second) {
        if (elems.size() > cap) throw std::runtime_error("enumerate_group: cap exceeded");
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Permutation> out;
  out.reserve(elems.size());
  for (auto& img : elems) out.push_back(Permutation(img));
  return out;
}

}  // namespace equivote::symmetry
