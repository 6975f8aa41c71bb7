#include "equivote/exact.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

namespace equivote::votecore {

namespace {

using Rational = boost::multiprecision::cpp_rational;

inline bool table_bit(const std::vector<uint64_t>& t, uint64_t x) { return (t[x >> 6] >> (x & 63)) & 1; }

Rational make_p(long num, long den) {
  if (den <= 0 || num < 0 || num > den) throw std::invalid_argument("exact influence: p must be in [0,1]");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

std::vector<Rational> powers(const Rational& base, int upto) {
  std::vector<Rational> v(upto + 1, Rational(1));
  for (int k = 1; k <= upto; ++k) v[k] = v[k - 1] * base;
  return v;
}

}  // namespace

std::string influence_enum_exact(const VotingRule& rule, int voter, long p_num, long p_den, int guard) {
  const int n = rule.n();
  if (voter < 0 || voter >= n) throw std::invalid_argument("influence: bad voter");
  Rational p = make_p(p_num, p_den);
  auto tab = win_table(rule, guard);
  auto pp = powers(p, n);
  auto pq = powers(Rational(1) - p, n);
  const uint64_t size = uint64_t{1} << n;
  const uint64_t bit = uint64_t{1} << voter;
  Rational acc(0);
  for (uint64_t x = 0; x < size; ++x)
    if (table_bit(tab, x) != table_bit(tab, x ^ bit)) {
      int pc = std::popcount(x);
      acc += pp[pc] * pq[n - pc];
    }
  return to_string(acc);
}

std::string influence_from_pivots_exact(const PivotTable& table, int voter, long p_num, long p_den) {
  if (voter < 0 || voter >= table.n) throw std::invalid_argument("influence: bad voter");
  const int n = table.n;
  Rational p = make_p(p_num, p_den);
  auto pp = powers(p, n + 1);
  auto pq = powers(Rational(1) - p, n + 1);
  Rational acc(0);
  for (int j = 1; j <= n; ++j) {
    if (table.m[voter][j] == 0) continue;
    Rational c = pp[j - 1] * pq[n - j + 1] + pp[n - j + 1] * pq[j - 1] + pp[j] * pq[n - j] + pp[n - j] * pq[j];
    acc += Rational(table.m[voter][j]) * c;
  }
  acc /= 2;
  return to_string(acc);
}

std::pair<long, long> decimal_to_fraction(const std::string& s) {
  size_t dot = s.find('.');
  if (dot == std::string::npos) {
    long v = std::stol(s);
    return {v, 1};
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  long den = 1;
  for (size_t i = 0; i < s.size() - dot - 1; ++i) {
    if (den > 1000000000L) throw std::invalid_argument("decimal_to_fraction: too many digits");
    den *= 10;
  }
  return {std::stol(digits), den};
}

}  // namespace equivote::votecore
