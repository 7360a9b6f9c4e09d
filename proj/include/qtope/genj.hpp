#pragma once

#include <unordered_set>
#include <vector>

#include "qtope/classes.hpp"
#include "qtope/quotient_graph.hpp"

namespace qtope {

enum class ZigzagMode { kZ1, kZ2 };

/// A zigzag language L_n together with its projection chain L_0, ..., L_n
/// and the closure condition (z1)/(z2) holding at each level. Construction
/// verifies the conditions; levels are kept lex-sorted.
class ZigzagLanguage {
 public:
  static ZigzagLanguage from_members(int n, std::vector<Permutation> members);
  // Used by the representative recursion, which knows the modes up front;
  // conditions are still verified.
  static ZigzagLanguage from_chain(std::vector<std::vector<Permutation>> levels,
                                   std::vector<ZigzagMode> modes);
  // The language {eps} over S_0.
  static ZigzagLanguage trivial();

  int n() const { return n_; }
  const std::vector<Permutation>& level(int k) const { return levels_[k]; }
  const std::vector<Permutation>& members() const { return levels_[n_]; }
  ZigzagMode mode(int k) const { return modes_[k]; }  // 1 <= k <= n
  bool contains(int k, const Permutation& p) const {
    return codes_[k].count(p.code()) > 0;
  }

 private:
  ZigzagLanguage() = default;
  void index_and_verify();

  int n_ = 0;
  std::vector<std::vector<Permutation>> levels_;
  std::vector<std::unordered_set<std::uint64_t>> codes_;
  std::vector<ZigzagMode> modes_;  // modes_[0] unused
};

/// Representatives R_n of the classes of a congruence, one per class,
/// together with the zigzag chain R_0, ..., R_n from the recursion.
struct RepSet {
  ZigzagLanguage language = ZigzagLanguage::trivial();
  std::vector<Permutation> class_rep;  // indexed by class id
};

RepSet build_representatives(const Congruence& c);
RepSet build_representatives(const Congruence& c, const ClassPartition& part);

// The greedy minimal-jump generation. Visits `start`, then repeatedly
// performs a minimal jump of the largest possible value reaching an
// unvisited member of the language; stops when no such jump exists or the
// direction is ambiguous.
std::vector<Permutation> algorithm_j(const std::vector<Permutation>& language,
                                     const Permutation& start);

// The sequence J(L_n) from the recursive description: alternately insert the
// largest value right-to-left and left-to-right along the previous level's
// sequence under (z1); append at the last position under (z2).
std::vector<Permutation> jump_sequence(const ZigzagLanguage& lang);

struct HamiltonPathResult {
  std::vector<Permutation> representatives;
  std::vector<int> class_ids;
};

// Runs Algorithm J on the representatives from the identity and verifies
// that the visited classes form a Hamilton path of the quotient graph.
// Verification failures are hard errors. n <= 9.
HamiltonPathResult hamilton_path(const Congruence& c);
HamiltonPathResult hamilton_path(const Congruence& c,
                                 const ClassPartition& part,
                                 const QuotientGraph& g);

struct CyclicOrderReport {
  bool parity_condition = false;  // |R_k| even for all 2 <= k <= n-1
  bool actually_cyclic = false;   // path endpoints adjacent (>= 3 classes)
};
CyclicOrderReport is_cyclic_order(const Congruence& c);  // n <= 8

// True when q arises from p by a single left or right jump (any step count).
bool is_single_jump(const Permutation& p, const Permutation& q);

}  // namespace qtope
