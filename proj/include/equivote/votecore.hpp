#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "equivote/bitset.hpp"
#include "equivote/symmetry.hpp"

namespace equivote::votecore {

// Enumeration over 2^n subsets/profiles is allowed up to this many voters
// unless overridden (EQUIVOTE_GUARD_N or --guard-n).
inline constexpr int kDefaultEnumGuard = 22;
inline constexpr int kDefaultAutGuard = 13;

int enum_guard_from_env(int fallback = kDefaultEnumGuard);

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Profile {
  int n = 0;
  Bitset votes;  // bit i set <=> voter i votes +1

  Profile() = default;
  Profile(int n_, Bitset v) : n(n_), votes(std::move(v)) {}
  static Profile from_mask(int n, uint64_t mask) { return {n, Bitset::from_word(n, mask)}; }
  // "+-+" style, one character per voter.
  static Profile from_string(const std::string& s);
  Profile flipped(int voter) const {
    Profile p = *this;
    p.votes.flip(voter);
    return p;
  }
  Profile negated() const { return {n, votes.complement()}; }
};

struct CoalitionFamily {
  int n = 0;
  std::vector<Bitset> sets;
};

enum class FamilyViolation { ok, even_n, bad_universe, empty_set, disjoint_pair, containment_pair };

struct FamilyValidation {
  FamilyViolation kind = FamilyViolation::ok;
  int first = -1, second = -1;  // indices of the offending pair / set
  bool ok() const { return kind == FamilyViolation::ok; }
  std::string message() const;
};

// Pairwise intersecting, antichain, n odd, sets nonempty.
FamilyValidation validate_family(const CoalitionFamily& family);

enum class RuleKind { family, majority, composed, truthtable };

// Odd monotone voting rule; a closed union of four representations. Family,
// majority and composed rules are odd/monotone by construction; truth tables
// are validated when built.
class VotingRule {
 public:
  static VotingRule majority(int n);
  static VotingRule family(CoalitionFamily f);
  // table holds 2^n outcome bits: bit x = 1 means outcome +1 on the profile
  // whose +1 voters are the set bits of x.
  static VotingRule truth_table(int n, std::vector<uint64_t> table_bits);
  static VotingRule composed(VotingRule inner, VotingRule outer);

  int n() const { return node_->n; }
  RuleKind kind() const { return node_->kind; }
  const CoalitionFamily& family_sets() const;  // family rules only
  const std::vector<uint64_t>& table() const;  // truth-table rules only
  VotingRule inner() const;                    // composed rules only
  VotingRule outer() const;                    // composed rules only

 private:
  struct Node {
    RuleKind kind;
    int n = 0;
    CoalitionFamily fam;
    std::vector<uint64_t> table_bits;
    std::shared_ptr<const Node> inner, outer;
  };
  explicit VotingRule(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Flat voter index of inner voter i in outer column j (column-major).
inline int composed_index(int inner_n, int i, int j) { return j * inner_n + i; }

int evaluate(const VotingRule& rule, const Profile& x);

// T is winning iff fixing T's voters to y forces the outcome y.
bool is_winning(const VotingRule& rule, const Bitset& coalition);

struct PivotTable {
  int n = 0;
  // m[i][j] = #{T : i in T, |T| = j, T winning, T \ {i} not winning}, j = 0..n.
  std::vector<std::vector<int64_t>> m;
  bool rows_identical() const;
  std::optional<std::pair<std::pair<int, int>, int>> first_row_difference() const;  // ((i,i'),j)
};

PivotTable pivot_table(const VotingRule& rule, int guard = enum_guard_from_env());

// c_j(p), j = 1..n (index 0 unused).
std::vector<double> pivot_coefficients(int n, double p);

// Exact sum over all 2^n profiles, compensated summation.
double influence_enum(const VotingRule& rule, int voter, double p, int guard = enum_guard_from_env());

// (1/2) * sum_j m[i][j] c_j(p); the half corrects the double count of each
// pivotal profile from both outcome sides.
double influence_from_pivots(const PivotTable& table, int voter, double p);

struct UnbiasedResult {
  bool decided = false;
  bool unbiased = false;
  std::string method;  // "pivot-table" or "composition"
  // Witness on failure: voters (a, b) whose pivot rows differ at size j.
  int witness_a = -1, witness_b = -1, witness_size = -1;
};

UnbiasedResult is_unbiased(const VotingRule& rule, int guard = enum_guard_from_env());

int min_coalition_size(const VotingRule& rule, int guard = enum_guard_from_env());

// Smallest integer k with k*k >= n.
int ceil_sqrt(int n);

struct SqrtBoundReport {
  bool unbiased = false;
  int min_size = 0;
  int bound = 0;  // ceil(sqrt(n))
  bool ok = false;  // min_size >= bound whenever unbiased
};
SqrtBoundReport sqrt_bound_check(const VotingRule& rule, int guard = enum_guard_from_env());

struct RuleAutReport {
  symmetry::AutGroup group;
  bool transitive_symmetric = false;
  bool totally_asymmetric = false;
};
RuleAutReport rule_automorphisms(const VotingRule& rule, int aut_guard = kDefaultAutGuard,
                                 uint64_t budget = symmetry::kDefaultAutBudget);

// --- enumeration core, shared with oracles and experiments ---

// Bit x of the result = 1 iff the subset with mask x is winning. 2^n bits.
std::vector<uint64_t> win_table(const VotingRule& rule, int guard = enum_guard_from_env());

std::vector<Bitset> minimal_winning_family(const VotingRule& rule, int guard = enum_guard_from_env());

// P[rule(x) = +1] when votes are i.i.d. +1 with probability p.
double success_probability(const VotingRule& rule, double p, int guard = enum_guard_from_env());

}  // namespace equivote::votecore
