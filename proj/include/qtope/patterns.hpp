#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtope/fence.hpp"
#include "qtope/permutation.hpp"

namespace qtope {

/// A classical or vincular permutation pattern. `vincular` = 0 for classical
/// patterns; otherwise entries at positions vincular, vincular+1 are glued
/// and must match adjacent positions. Text syntax: "231" classical,
/// "2[31]" with the glued pair in brackets.
struct Pattern {
  std::vector<int> entries;
  int vincular = 0;

  int length() const { return static_cast<int>(entries.size()); }
  bool operator==(const Pattern&) const = default;
  auto operator<=>(const Pattern&) const = default;
};

Pattern parse_pattern(std::string_view text);
std::vector<Pattern> parse_patterns(std::string_view comma_separated);
std::string to_string(const Pattern& t);

bool contains(const Permutation& p, const Pattern& t);

// A classical pattern is tame when its largest value is not at either end; a
// vincular pattern additionally needs the largest value inside the glued
// pair.
bool is_tame(const Pattern& t);

// S_n(patterns): all permutations avoiding every pattern. Enumerates S_n,
// n <= 10.
std::vector<Permutation> avoid_set(int n, std::span<const Pattern> patterns);

/// A set of vincular patterns of the shape A k1 B (glued pair = largest then
/// smallest value) closed under permuting A and B independently. The
/// constructor validates the shape and completes the closure; the original
/// input may be a proper subset of the closure.
class WellBehavedSet {
 public:
  explicit WellBehavedSet(std::vector<Pattern> patterns);

  const std::vector<Pattern>& patterns() const { return patterns_; }
  bool input_was_closed() const { return input_was_closed_; }

  // One word per closure class: for the interior values 2..k-1 in increasing
  // order, 'A' when the value sits left of the glued pair, 'B' otherwise.
  // Distinct words only.
  const std::vector<std::string>& side_words() const { return side_words_; }

 private:
  std::vector<Pattern> patterns_;
  std::vector<std::string> side_words_;
  bool input_was_closed_ = true;
};

// The congruence whose bars are exactly the rewriting-rule edges of the
// pattern set: fences f(a,b,L) realizable by a match (pattern interior
// values embed order-preservingly into ]a,b[ with A-values inside L and
// B-values outside).
Congruence congruence_from_patterns(const WellBehavedSet& set, int n);

// One application of a rewriting rule (transposing the glued descent of a
// match), or nullopt when p avoids the whole set.
std::optional<Permutation> rewrite_step(const WellBehavedSet& set,
                                        const Permutation& p);

}  // namespace qtope
