#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qtope/permutation.hpp"

namespace qtope {

/// The fence f(a,b,L): the maximal mutually-forcing set of (a,b)-edges of
/// the weak order, parameterized by which values of ]a,b[ sit to the left of
/// the transposed pair. `left` is a bitmask with bit v-1 set for value v.
struct Fence {
  std::int8_t a = 0;
  std::int8_t b = 0;
  std::uint16_t left = 0;

  bool essential() const { return b - a >= 2; }
  std::vector<int> left_values() const;
  // Canonical ordering: (a, b, left) ascending.
  auto operator<=>(const Fence&) const = default;
};

Fence make_fence(int a, int b, std::span<const int> left);
Fence make_fence(int a, int b, std::initializer_list<int> left = {});
std::uint16_t interior_mask(int a, int b);  // bits for values in ]a,b[

// f precedes g in the forcing order: writing f=f(a,b,L), g=f(c,d,M), this
// holds iff a <= c < d <= b, (a,b) != (c,d) and M = L ∩ ]c,d[. The bars of g
// force the bars of f.
bool forcing_less(const Fence& f, const Fence& g);

// Number of fences f(a,b,L) with b-a = k: (n-k) 2^(k-1).
std::uint64_t fence_count(int n, int k);
std::uint64_t total_fence_count(int n);
std::uint64_t essential_fence_count(int n);  // 2^n - 2n for n >= 2

/// Index space of all fences for a fixed n, in canonical order, with cover
/// relations of the forcing order precomputed.
class FenceTable {
 public:
  explicit FenceTable(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(fences_.size()); }
  const Fence& fence(int idx) const { return fences_[idx]; }
  int index_of(const Fence& f) const;
  int index_of(int a, int b, std::uint16_t left) const {
    return start_[a * (n_ + 1) + b] + (left >> a);
  }
  bool valid(const Fence& f) const;

  // At most 2 upper covers / 4 lower covers; -1 marks absence.
  const std::array<int, 2>& upper_covers(int idx) const { return upper_[idx]; }
  const std::array<int, 4>& lower_covers(int idx) const { return lower_[idx]; }

  // Indices ordered by interval length descending: a linear extension of the
  // forcing order (lower elements first).
  const std::vector<int>& linear_extension() const { return linext_; }
  const std::vector<int>& linear_extension_essential() const {
    return linext_essential_;
  }
  int essential_count() const { return essential_count_; }

 private:
  int n_;
  std::vector<Fence> fences_;
  std::vector<int> start_;
  std::vector<std::array<int, 2>> upper_;
  std::vector<std::array<int, 4>> lower_;
  std::vector<int> linext_;
  std::vector<int> linext_essential_;
  int essential_count_ = 0;
};

const FenceTable& fence_table(int n);

/// Dynamic bitset over a fence table's index space.
class FenceSet {
 public:
  FenceSet() = default;
  explicit FenceSet(int bit_count)
      : nbits_(bit_count), w_((bit_count + 63) / 64, 0) {}

  int bit_count() const { return nbits_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  int count() const;
  bool subset_of(const FenceSet& o) const;
  bool operator==(const FenceSet&) const = default;

  std::span<const std::uint64_t> words() const { return w_; }
  std::span<std::uint64_t> words() { return w_; }

 private:
  int nbits_ = 0;
  std::vector<std::uint64_t> w_;
};

/// A lattice congruence of the weak order on S_n, represented canonically as
/// the downset F of fences whose edges are contracted (Reading's bijection).
/// The full downset is stored eagerly so bar tests are O(1).
class Congruence {
 public:
  explicit Congruence(int n);  // the empty downset: the weak order itself
  static Congruence closure(int n, std::span<const Fence> generators);
  static Congruence from_set(int n, FenceSet set, bool trust_downset = false);

  int n() const { return n_; }
  int size() const { return set_.count(); }
  bool empty() const { return size() == 0; }
  bool contains(const Fence& f) const;
  bool contains_index(int idx) const { return set_.test(idx); }
  bool essential() const { return essential_; }
  bool is_downset() const;
  std::vector<Fence> fences() const;  // canonical order
  const FenceSet& set() const { return set_; }

  // Fences with b < n, reinterpreted over S_{n-1} (Lemma: this is again a
  // congruence).
  Congruence restriction() const;

  bool is_bar(const Permutation& p, const Permutation& q) const;
  bool bar_between_values(int a, int b, std::uint16_t left_mask) const {
    return set_.test(fence_table(n_).index_of(a, b, left_mask));
  }

  bool subset_of(const Congruence& o) const;
  bool operator==(const Congruence& o) const {
    return n_ == o.n_ && set_ == o.set_;
  }

 private:
  friend struct CongruenceScratch;
  void assign_word0(std::uint64_t w, bool essential);

  int n_;
  FenceSet set_;
  bool essential_ = true;
};

/// Arcs on n points. A reduced diagram holds exactly the maximal fences of a
/// downset; `arcs` is kept in canonical fence order.
struct ArcDiagram {
  int n = 0;
  std::vector<Fence> arcs;
  bool operator==(const ArcDiagram&) const = default;
};

// A simple arc does not connect consecutive points and does not cross the
// vertical line (L empty or all of ]a,b[).
bool is_simple_arc(const Fence& f);

ArcDiagram reduced_diagram(const Congruence& c);
// Requires pairwise forcing-incomparable arcs; closes them downward.
Congruence from_diagram(const ArcDiagram& d);
Congruence downset_closure(int n, std::span<const Fence> generators);

// The unique fence containing the cover edge between p and q (which must
// differ by one adjacent transposition).
Fence edge_fence(const Permutation& p, const Permutation& q);

// All cover edges (pi, rho) with pi <| rho belonging to f, lex-sorted by pi.
// Enumerates S_n: n <= 10.
std::vector<std::pair<Permutation, Permutation>> fence_edges(const Fence& f,
                                                             int n);

// Streams every downset of the forcing order restricted to essential fences,
// exactly once, in a fixed DFS order starting from the empty downset. The
// Congruence passed to the visitor is a scratch object reused between calls;
// copy it to retain. n <= 6 (11,396,000 downsets at n = 6).
std::uint64_t enumerate_essential_congruences(
    int n, const std::function<void(const Congruence&)>& visit);

// Same, over the full fence poset (all lattice congruences). n <= 5.
std::uint64_t enumerate_all_congruences(
    int n, const std::function<void(const Congruence&)>& visit);

// Splits the enumeration into independent subtrees handled by `jobs`
// threads. The visitor is invoked concurrently and must be thread-safe.
std::uint64_t parallel_enumerate_essential_congruences(
    int n, int jobs, const std::function<void(const Congruence&)>& visit);

}  // namespace qtope
