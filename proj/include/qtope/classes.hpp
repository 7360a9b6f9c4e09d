#pragma once

#include <cstdint>
#include <vector>

#include "qtope/fence.hpp"
#include "qtope/permutation.hpp"

namespace qtope {

/// One equivalence class of S_n/≡. Classes are intervals [min, max] of the
/// weak order; `members` holds lex ranks in ascending order and may be empty
/// when the partition was computed without member lists.
struct EquivalenceClass {
  int id = 0;
  Permutation min;
  Permutation max;
  Permutation representative;  // min by default; RepSet overrides
  std::uint32_t size = 0;
  std::vector<std::uint32_t> members;
};

struct ClassPartition {
  int n = 0;
  Congruence congruence{0};
  std::vector<EquivalenceClass> classes;
  std::vector<std::int32_t> class_of;  // indexed by lex rank, size n!

  int class_id_of(const Permutation& p) const {
    return class_of[p.lex_rank()];
  }
};

// Union-find over all cover edges flagged as bars. Class ids follow the
// lexicographic order of the class minima. n <= 9.
ClassPartition compute_classes(const Congruence& c, bool with_members = true);

// Number of classes only, skipping min/max extraction. n <= 9.
std::uint64_t count_classes(const Congruence& c);

// {p(m) : m in X}, sorted lex. Equals one class of the restriction.
std::vector<Permutation> class_projection(const ClassPartition& part,
                                          int class_id);

/// Maximal run of insertion positions on the rail r(q) = c_n(q) <| ... <|
/// c_1(q) lying in one equivalence class. Positions are listed walking the
/// rail upward, so `first >= last`.
struct RailSegment {
  int first = 0;
  int last = 0;
  bool operator==(const RailSegment&) const = default;
};

// Segments of the rail of q in S_n under c (q has length n-1). Requires
// f(n-1,n,{}) not in c, otherwise the rail collapses entirely.
std::vector<RailSegment> rail_segments(const Congruence& c,
                                       const Permutation& q);

}  // namespace qtope
