#pragma once

#include <string>

#include "equivote/votecore.hpp"

namespace equivote::votecore {

// Exact rational influence, p given as p_num/p_den. Results are returned as
// canonical "num/den" strings so callers can compare them exactly.
std::string influence_enum_exact(const VotingRule& rule, int voter, long p_num, long p_den,
                                 int guard = enum_guard_from_env());

std::string influence_from_pivots_exact(const PivotTable& table, int voter, long p_num, long p_den);

// Parse a decimal string like "0.25" into an exact fraction (25, 100).
std::pair<long, long> decimal_to_fraction(const std::string& s);

}  // namespace equivote::votecore
