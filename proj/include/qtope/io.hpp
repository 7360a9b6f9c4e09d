#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qtope/classes.hpp"
#include "qtope/genj.hpp"
#include "qtope/quotient_graph.hpp"

namespace qtope {

// Terse fence syntax: `a-b:{x,y}`, empty or omitted braces for L = {},
// fences joined by `;`. Example: "1-3;2-4:{3}".
std::vector<Fence> parse_fences(std::string_view text);
std::string format_fences(std::span<const Fence> fences);

// Parses the terse syntax and closes downward.
Congruence congruence_from_terse(int n, std::string_view text);

// {"n":4,"fences":[{"a":2,"b":4,"left":[3]}],"generators":true}. With
// generators=false the listed fences must already form a downset.
Congruence congruence_from_json(const nlohmann::json& j);
nlohmann::json diagram_to_json(const Congruence& c, bool reduced = false);

// [{id, min, max, size, representative}, ...]
nlohmann::json partition_to_json(const ClassPartition& part);

std::string graph_to_dot(const QuotientGraph& g, const ClassPartition& part);
nlohmann::json graph_to_json(const QuotientGraph& g,
                             const ClassPartition& part);

// Full structural report of one congruence.
nlohmann::json analyze(const Congruence& c,
                       std::uint64_t cycle_budget = 50'000'000);

// The survey table: counts of quotient-graph classes and degree extremes per
// n. Enumerated cells are marked with '*'; cells beyond the enumeration
// budget print '?'. `slow` raises the |Q_n| budget to n = 6.
std::string table1_tsv(int max_n, bool slow = false);

}  // namespace qtope
