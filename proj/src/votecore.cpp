#include "equivote/votecore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace equivote::votecore {

int enum_guard_from_env(int fallback) {
  if (const char* s = std::getenv("EQUIVOTE_GUARD_N")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 30) return (int)v;
  }
  return fallback;
}

Profile Profile::from_string(const std::string& s) {
  Profile p;
  p.n = (int)s.size();
  p.votes = Bitset(p.n);
  for (int i = 0; i < p.n; ++i) {
    if (s[i] == '+') p.votes.set(i);
    else if (s[i] != '-') throw std::invalid_argument("profile string must be over {+,-}");
  }
  return p;
}

std::string FamilyValidation::message() const {
  switch (kind) {
    case FamilyViolation::ok: return "valid";
    case FamilyViolation::even_n: return "voter count must be odd";
    case FamilyViolation::bad_universe: return "coalition " + std::to_string(first) + " has wrong universe size";
    case FamilyViolation::empty_set: return "coalition " + std::to_string(first) + " is empty";
    case FamilyViolation::disjoint_pair:
      return "coalitions " + std::to_string(first) + " and " + std::to_string(second) + " are disjoint";
    case FamilyViolation::containment_pair:
      return "coalition " + std::to_string(first) + " contains coalition " + std::to_string(second);
  }
  return "";
}

FamilyValidation validate_family(const CoalitionFamily& family) {
  FamilyValidation v;
  if (family.n <= 0 || family.n % 2 == 0) {
    v.kind = FamilyViolation::even_n;
    return v;
  }
  for (size_t i = 0; i < family.sets.size(); ++i) {
    if (family.sets[i].size() != family.n) {
      v.kind = FamilyViolation::bad_universe;
      v.first = (int)i;
      return v;
    }
    if (family.sets[i].none()) {
      v.kind = FamilyViolation::empty_set;
      v.first = (int)i;
      return v;
    }
  }
  for (size_t i = 0; i < family.sets.size(); ++i) {
    for (size_t j = i + 1; j < family.sets.size(); ++j) {
      if (!family.sets[i].intersects(family.sets[j])) {
        v.kind = FamilyViolation::disjoint_pair;
        v.first = (int)i;
        v.second = (int)j;
        return v;
      }
      if (family.sets[j].subset_of(family.sets[i])) {
        v.kind = FamilyViolation::containment_pair;
        v.first = (int)i;
        v.second = (int)j;
        return v;
      }
      if (family.sets[i].subset_of(family.sets[j])) {
        v.kind = FamilyViolation::containment_pair;
        v.first = (int)j;
        v.second = (int)i;
        return v;
      }
    }
  }
  return v;
}

// --- rule construction -----------------------------------------------------

namespace {

inline bool table_bit(const std::vector<uint64_t>& t, uint64_t x) { return (t[x >> 6] >> (x & 63)) & 1; }
inline void table_set(std::vector<uint64_t>& t, uint64_t x) { t[x >> 6] |= uint64_t{1} << (x & 63); }

void require_odd(int n, const char* what) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument(std::string(what) + ": voter count must be odd and positive");
}

}  // namespace

VotingRule VotingRule::majority(int n) {
  require_odd(n, "majority");
  auto node = std::make_shared<Node>();
  node->kind = RuleKind::majority;
  node->n = n;
  return VotingRule(std::move(node));
}

VotingRule VotingRule::family(CoalitionFamily f) {
  FamilyValidation v = validate_family(f);
  if (!v.ok()) throw std::invalid_argument("family rule: " + v.message());
  auto node = std::make_shared<Node>();
  node->kind = RuleKind::family;
  node->n = f.n;
  node->fam = std::move(f);
  return VotingRule(std::move(node));
}

VotingRule VotingRule::truth_table(int n, std::vector<uint64_t> table_bits) {
  require_odd(n, "truth table");
  if (n > kDefaultEnumGuard) throw std::invalid_argument("truth table: n exceeds 22");
  const uint64_t size = uint64_t{1} << n;
  if (table_bits.size() != (size + 63) / 64) throw std::invalid_argument("truth table: wrong word count");
  if (size < 64 && (table_bits[0] >> size) != 0) throw std::invalid_argument("truth table: stray bits");
  const uint64_t full = size - 1;
  for (uint64_t x = 0; x < size; ++x) {
    if (table_bit(table_bits, x) == table_bit(table_bits, ~x & full))
      throw std::invalid_argument("truth table: not odd at profile " + std::to_string(x));
    for (int i = 0; i < n; ++i) {
      uint64_t y = x | (uint64_t{1} << i);
      if (y != x && table_bit(table_bits, x) && !table_bit(table_bits, y))
        throw std::invalid_argument("truth table: not monotone at profile " + std::to_string(x));
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = RuleKind::truthtable;
  node->n = n;
  node->table_bits = std::move(table_bits);
  return VotingRule(std::move(node));
}

VotingRule VotingRule::composed(VotingRule inner, VotingRule outer) {
  auto node = std::make_shared<Node>();
  node->kind = RuleKind::composed;
  node->n = inner.n() * outer.n();
  node->inner = inner.node_;
  node->outer = outer.node_;
  return VotingRule(std::move(node));
}

const CoalitionFamily& VotingRule::family_sets() const {
  if (node_->kind != RuleKind::family) throw std::logic_error("not a family rule");
  return node_->fam;
}
const std::vector<uint64_t>& VotingRule::table() const {
  if (node_->kind != RuleKind::truthtable) throw std::logic_error("not a truth-table rule");
  return node_->table_bits;
}
VotingRule VotingRule::inner() const {
  if (node_->kind != RuleKind::composed) throw std::logic_error("not a composed rule");
  return VotingRule(node_->inner);
}
VotingRule VotingRule::outer() const {
  if (node_->kind != RuleKind::composed) throw std::logic_error("not a composed rule");
  return VotingRule(node_->outer);
}

// --- evaluation and winning sets -------------------------------------------

int evaluate(const VotingRule& rule, const Profile& x) {
  if (x.n != rule.n()) throw std::invalid_argument("evaluate: profile size mismatch");
  switch (rule.kind()) {
    case RuleKind::majority:
      return 2 * x.votes.count() > rule.n() ? 1 : -1;
    case RuleKind::family: {
      const auto& fam = rule.family_sets();
      Bitset comp = x.votes.complement();
      for (const auto& s : fam.sets)
        if (s.subset_of(x.votes)) return 1;
      for (const auto& s : fam.sets)
        if (s.subset_of(comp)) return -1;
      return 2 * x.votes.count() > rule.n() ? 1 : -1;
    }
    case RuleKind::truthtable:
      return table_bit(rule.table(), x.votes.low_word()) ? 1 : -1;
    case RuleKind::composed: {
      const VotingRule in = rule.inner();
      const VotingRule out = rule.outer();
      const int n1 = in.n(), n2 = out.n();
      Profile agg(n2, Bitset(n2));
      for (int j = 0; j < n2; ++j) {
        Profile col(n1, Bitset(n1));
        for (int i = 0; i < n1; ++i)
          if (x.votes.test(composed_index(n1, i, j))) col.votes.set(i);
        if (evaluate(in, col) > 0) agg.votes.set(j);
      }
      return evaluate(out, agg);
    }
  }
  throw std::logic_error("unreachable");
}

bool is_winning(const VotingRule& rule, const Bitset& coalition) {
  if (coalition.size() != rule.n()) throw std::invalid_argument("is_winning: coalition size mismatch");
  switch (rule.kind()) {
    case RuleKind::majority:
      return 2 * coalition.count() > rule.n();
    case RuleKind::family: {
      const auto& fam = rule.family_sets();
      for (const auto& s : fam.sets)
        if (s.subset_of(coalition)) return true;
      if (2 * coalition.count() <= rule.n()) return false;
      Bitset comp = coalition.complement();
      for (const auto& s : fam.sets)
        if (s.subset_of(comp)) return false;
      return true;
    }
    case RuleKind::truthtable:
      // Monotone by validation, so the all-minus completion decides.
      return table_bit(rule.table(), coalition.low_word());
    case RuleKind::composed: {
      const VotingRule in = rule.inner();
      const VotingRule out = rule.outer();
      const int n1 = in.n(), n2 = out.n();
      Bitset winning_cols(n2);
      for (int j = 0; j < n2; ++j) {
        Bitset col(n1);
        for (int i = 0; i < n1; ++i)
          if (coalition.test(composed_index(n1, i, j))) col.set(i);
        if (is_winning(in, col)) winning_cols.set(j);
      }
      return is_winning(out, winning_cols);
    }
  }
  throw std::logic_error("unreachable");
}

// --- enumeration core -------------------------------------------------------

std::vector<uint64_t> win_table(const VotingRule& rule, int guard) {
  const int n = rule.n();
  if (n > guard)
    throw GuardError("enumeration over 2^" + std::to_string(n) + " exceeds guard " + std::to_string(guard));
  const uint64_t size = uint64_t{1} << n;
  std::vector<uint64_t> tab((size + 63) / 64, 0);
  switch (rule.kind()) {
    case RuleKind::truthtable:
      return rule.table();
    case RuleKind::majority: {
      for (uint64_t x = 0; x < size; ++x)
        if (2 * std::popcount(x) > n) table_set(tab, x);
      return tab;
    }
    case RuleKind::family: {
      const auto& fam = rule.family_sets();
      std::vector<uint64_t> masks;
      masks.reserve(fam.sets.size());
      for (const auto& s : fam.sets) masks.push_back(s.low_word());
      const uint64_t full = size - 1;
      for (uint64_t x = 0; x < size; ++x) {
        bool win = false;
        for (uint64_t m : masks)
          if ((m & x) == m) {
            win = true;
            break;
          }
        if (!win && 2 * std::popcount(x) > n) {
          win = true;
          const uint64_t comp = ~x & full;
          for (uint64_t m : masks)
            if ((m & comp) == m) {
              win = false;
              break;
            }
        }
        if (win) table_set(tab, x);
      }
      return tab;
    }
    case RuleKind::composed: {
      const VotingRule in = rule.inner();
      const VotingRule out = rule.outer();
      const int n1 = in.n(), n2 = out.n();
      auto tin = win_table(in, guard);
      auto tout = win_table(out, guard);
      const uint64_t colmask = (uint64_t{1} << n1) - 1;
      for (uint64_t x = 0; x < size; ++x) {
        uint64_t cols = 0;
        for (int j = 0; j < n2; ++j)
          if (table_bit(tin, (x >> (j * n1)) & colmask)) cols |= uint64_t{1} << j;
        if (table_bit(tout, cols)) table_set(tab, x);
      }
      return tab;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Bitset> minimal_winning_family(const VotingRule& rule, int guard) {
  const int n = rule.n();
  auto tab = win_table(rule, guard);
  std::vector<Bitset> out;
  const uint64_t size = uint64_t{1} << n;
  for (uint64_t x = 1; x < size; ++x) {
    if (!table_bit(tab, x)) continue;
    bool minimal = true;
    uint64_t rest = x;
    while (rest) {
      uint64_t bit = rest & (~rest + 1);
      rest ^= bit;
      if (table_bit(tab, x ^ bit)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(Bitset::from_word(n, x));
  }
  return out;
}

PivotTable pivot_table(const VotingRule& rule, int guard) {
  const int n = rule.n();
  auto tab = win_table(rule, guard);
  PivotTable pt;
  pt.n = n;
  pt.m.assign(n, std::vector<int64_t>(n + 1, 0));
  const uint64_t size = uint64_t{1} << n;
  for (uint64_t x = 1; x < size; ++x) {
    if (!table_bit(tab, x)) continue;
    const int pc = std::popcount(x);
    uint64_t rest = x;
    while (rest) {
      uint64_t bit = rest & (~rest + 1);
      rest ^= bit;
      if (!table_bit(tab, x ^ bit)) pt.m[std::countr_zero(bit)][pc]++;
    }
  }
  return pt;
}

bool PivotTable::rows_identical() const { return !first_row_difference().has_value(); }

std::optional<std::pair<std::pair<int, int>, int>> PivotTable::first_row_difference() const {
  for (int i = 1; i < n; ++i)
    for (int j = 0; j <= n; ++j)
      if (m[i][j] != m[0][j]) return std::make_pair(std::make_pair(0, i), j);
  return std::nullopt;
}

// --- influence ---------------------------------------------------------------

namespace {

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

void pow_tables(int n, double p, std::vector<double>& pp, std::vector<double>& pq) {
  pp.assign(n + 1, 1.0);
  pq.assign(n + 1, 1.0);
  for (int k = 1; k <= n; ++k) {
    pp[k] = pp[k - 1] * p;
    pq[k] = pq[k - 1] * (1.0 - p);
  }
}

}  // namespace

std::vector<double> pivot_coefficients(int n, double p) {
  std::vector<double> pp, pq;
  pow_tables(n + 1, p, pp, pq);
  std::vector<double> c(n + 1, 0.0);
  for (int j = 1; j <= n; ++j)
    c[j] = pp[j - 1] * pq[n - j + 1] + pp[n - j + 1] * pq[j - 1] + pp[j] * pq[n - j] + pp[n - j] * pq[j];
  return c;
}

double influence_enum(const VotingRule& rule, int voter, double p, int guard) {
  const int n = rule.n();
  if (voter < 0 || voter >= n) throw std::invalid_argument("influence: bad voter");
  auto tab = win_table(rule, guard);
  std::vector<double> pp, pq;
  pow_tables(n, p, pp, pq);
  const uint64_t size = uint64_t{1} << n;
  const uint64_t bit = uint64_t{1} << voter;
  Kahan acc;
  for (uint64_t x = 0; x < size; ++x) {
    if (table_bit(tab, x) != table_bit(tab, x ^ bit)) {
      int pc = std::popcount(x);
      acc.add(pp[pc] * pq[n - pc]);
    }
  }
  return acc.sum;
}

double influence_from_pivots(const PivotTable& table, int voter, double p) {
  if (voter < 0 || voter >= table.n) throw std::invalid_argument("influence: bad voter");
  auto c = pivot_coefficients(table.n, p);
  Kahan acc;
  for (int j = 1; j <= table.n; ++j)
    if (table.m[voter][j] != 0) acc.add((double)table.m[voter][j] * c[j]);
  return 0.5 * acc.sum;
}

// --- unbiasedness, coalition sizes, automorphisms ----------------------------

UnbiasedResult is_unbiased(const VotingRule& rule, int guard) {
  UnbiasedResult r;
  if (rule.kind() == RuleKind::composed) {
    // Unbiased iff both components are (holds in both directions for odd,
    // monotone components; cross-checked against pivot tables in tests).
    const VotingRule in = rule.inner();
    const VotingRule out = rule.outer();
    UnbiasedResult a = is_unbiased(in, guard);
    UnbiasedResult b = is_unbiased(out, guard);
    r.decided = a.decided && b.decided;
    r.method = "composition";
    r.unbiased = a.unbiased && b.unbiased;
    if (r.decided && !r.unbiased) {
      const int n1 = in.n();
      if (!a.unbiased) {
        r.witness_a = composed_index(n1, a.witness_a, 0);
        r.witness_b = composed_index(n1, a.witness_b, 0);
        r.witness_size = a.witness_size;
      } else {
        r.witness_a = composed_index(n1, 0, b.witness_a);
        r.witness_b = composed_index(n1, 0, b.witness_b);
        r.witness_size = b.witness_size;
      }
    }
    return r;
  }
  PivotTable pt = pivot_table(rule, guard);
  r.decided = true;
  r.method = "pivot-table";
  auto diff = pt.first_row_difference();
  r.unbiased = !diff.has_value();
  if (diff) {
    r.witness_a = diff->first.first;
    r.witness_b = diff->first.second;
    r.witness_size = diff->second;
  }
  return r;
}

int min_coalition_size(const VotingRule& rule, int guard) {
  const int n = rule.n();
  switch (rule.kind()) {
    case RuleKind::majority:
      return (n + 1) / 2;
    case RuleKind::family: {
      int best = (n + 1) / 2;
      for (const auto& s : rule.family_sets().sets) best = std::min(best, s.count());
      return best;
    }
    case RuleKind::composed:
      // Winning sets of the composition need an outer-winning set of columns,
      // each carrying an inner-winning set, so minima multiply.
      return min_coalition_size(rule.inner(), guard) * min_coalition_size(rule.outer(), guard);
    case RuleKind::truthtable: {
      auto tab = win_table(rule, guard);
      int best = n;
      const uint64_t size = uint64_t{1} << n;
      for (uint64_t x = 1; x < size; ++x)
        if (table_bit(tab, x)) best = std::min(best, (int)std::popcount(x));
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

int ceil_sqrt(int n) {
  int k = (int)std::sqrt((double)n);
  while (k * k < n) ++k;
  while (k > 0 && (k - 1) * (k - 1) >= n) --k;
  return k;
}

SqrtBoundReport sqrt_bound_check(const VotingRule& rule, int guard) {
  SqrtBoundReport r;
  r.unbiased = is_unbiased(rule, guard).unbiased;
  r.min_size = min_coalition_size(rule, guard);
  r.bound = ceil_sqrt(rule.n());
  r.ok = !r.unbiased || r.min_size >= r.bound;
  return r;
}

RuleAutReport rule_automorphisms(const VotingRule& rule, int aut_guard, uint64_t budget) {
  const int n = rule.n();
  if (n > aut_guard)
    throw GuardError("rule automorphisms guarded at n <= " + std::to_string(aut_guard));
  // aut(Phi) = permutations preserving the minimal winning family; search the
  // voter/coalition incidence structure with pivot rows as voter invariants.
  auto minimal = minimal_winning_family(rule, std::max(aut_guard, kDefaultEnumGuard));
  PivotTable pt = pivot_table(rule, std::max(aut_guard, kDefaultEnumGuard));
  std::vector<int> row_class(n, 0);
  {
    std::vector<std::vector<int64_t>> distinct;
    for (int i = 0; i < n; ++i) {
      auto it = std::find(distinct.begin(), distinct.end(), pt.m[i]);
      if (it == distinct.end()) {
        distinct.push_back(pt.m[i]);
        row_class[i] = (int)distinct.size() - 1;
      } else {
        row_class[i] = (int)(it - distinct.begin());
      }
    }
  }
  const int m = (int)minimal.size();
  symmetry::EngineGraph h;
  h.n = n + m;
  h.adj.assign(h.n, Bitset(h.n));
  h.colors.assign(h.n, 0);
  for (int i = 0; i < n; ++i) h.colors[i] = row_class[i];
  for (int k = 0; k < m; ++k) {
    h.colors[n + k] = n + minimal[k].count();  // offset past voter classes
    minimal[k].for_each([&](int i) {
      h.adj[i].set(n + k);
      h.adj[n + k].set(i);
    });
  }
  RuleAutReport report;
  report.group = symmetry::project_chain(symmetry::automorphism_chain(h, n, budget), n);
  report.transitive_symmetric = report.group.transitive() && !report.group.exhausted;
  report.totally_asymmetric = report.group.trivial();
  return report;
}

double success_probability(const VotingRule& rule, double p, int guard) {
  const int n = rule.n();
  switch (rule.kind()) {
    case RuleKind::majority: {
      // Sum of binomial upper tail, accumulated from the smallest terms.
      long double q = 1.0L - (long double)p;
      long double term = 1.0L;
      for (int k = 0; k < n; ++k) term *= (long double)p;  // p^n
      long double sum = term;
      for (int k = n; k > (n + 1) / 2; --k) {
        // step to k-1: multiply by C(n,k-1)/C(n,k) * q/p = (k/(n-k+1)) * q/p
        if (p == 0.0) {
          term = 0.0L;
          break;
        }
        term *= (long double)k / (long double)(n - k + 1) * q / (long double)p;
        sum += term;
      }
      if (p == 0.0) return 0.0;
      if (p == 1.0) return 1.0;
      return std::min(1.0, std::max(0.0, (double)sum));
    }
    case RuleKind::composed:
      return success_probability(rule.outer(), success_probability(rule.inner(), p, guard), guard);
    default: {
      auto tab = win_table(rule, guard);
      std::vector<double> pp, pq;
      pow_tables(n, p, pp, pq);
      Kahan acc;
      const uint64_t size = uint64_t{1} << n;
      for (uint64_t x = 0; x < size; ++x)
        if (table_bit(tab, x)) {
          int pc = std::popcount(x);
          acc.add(pp[pc] * pq[n - pc]);
        }
      return acc.sum;
    }
  }
}

}  // namespace equivote::votecore
