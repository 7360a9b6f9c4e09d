#include "qtope/classes.hpp"

#include <algorithm>
#include <numeric>

namespace qtope {

namespace {

constexpr int kClassBudget = 9;

struct UnionFind {
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> rank_;

  explicit UnionFind(std::size_t size) : parent(size), rank_(size, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::int32_t x, std::int32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
  }
};

std::uint64_t lex_rank_of(const std::vector<int>& e) {
  int n = static_cast<int>(e.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < n; ++j) smaller_after += e[j] < e[i];
    rank += smaller_after * factorial(n - 1 - i);
  }
  return rank;
}

// Runs union-find over all bar edges; shared by compute_classes and
// count_classes.
UnionFind unite_bars(const Congruence& c) {
  int n = c.n();
  auto total = factorial(n);
  UnionFind uf(total);
  if (n == 0) return uf;

  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  std::uint64_t rank = 0;
  do {
    std::uint16_t prefix = 0;
    for (int i = 0; i + 1 < n; ++i) {
      int x = e[i], y = e[i + 1];
      if (x < y && c.bar_between_values(x, y, prefix & interior_mask(x, y))) {
        std::swap(e[i], e[i + 1]);
        std::uint64_t other = lex_rank_of(e);
        std::swap(e[i], e[i + 1]);
        uf.unite(static_cast<std::int32_t>(rank),
                 static_cast<std::int32_t>(other));
      }
      prefix |= 1u << (x - 1);
    }
    ++rank;
  } while (std::next_permutation(e.begin(), e.end()));
  return uf;
}

}  // namespace

ClassPartition compute_classes(const Congruence& c, bool with_members) {
  int n = c.n();
  if (n > kClassBudget)
    throw BudgetError("compute_classes: n <= " + std::to_string(kClassBudget));
  auto total = factorial(n);
  UnionFind uf = unite_bars(c);

  // Per permutation: does an intra-class down-/up-neighbor exist?
  std::vector<std::uint8_t> has_down(total, 0), has_up(total, 0);
  std::vector<std::int32_t> root_of(total);
  if (n > 0) {
    std::vector<int> e(n);
    std::iota(e.begin(), e.end(), 1);
    std::uint64_t rank = 0;
    do {
      auto root = uf.find(static_cast<std::int32_t>(rank));
      root_of[rank] = root;
      for (int i = 0; i + 1 < n; ++i) {
        if (e[i] < e[i + 1]) {
          std::swap(e[i], e[i + 1]);
          std::uint64_t other = lex_rank_of(e);
          std::swap(e[i], e[i + 1]);
          if (uf.find(static_cast<std::int32_t>(other)) == root) {
            has_up[rank] = 1;
            has_down[other] = 1;
          }
        }
      }
      ++rank;
    } while (std::next_permutation(e.begin(), e.end()));
  } else {
    root_of.assign(1, 0);
  }

  // Gather classes; the minimum of a class is its unique member without an
  // intra-class down-neighbor (interval property), so scanning ranks in lex
  // order and keying classes by their minima yields ids in lex order of the
  // minima.
  std::vector<std::int32_t> class_at_root(total, -1);
  ClassPartition part;
  part.n = n;
  part.congruence = c;
  part.class_of.assign(total, -1);
  for (std::uint64_t r = 0; r < total; ++r) {
    if (!has_down[r]) {
      auto root = root_of[r];
      if (class_at_root[root] != -1)
        throw VerificationError("class minimum is not unique");
      class_at_root[root] = static_cast<std::int32_t>(part.classes.size());
      EquivalenceClass cls;
      cls.id = static_cast<int>(part.classes.size());
      cls.min = Permutation::from_lex_rank(n, r);
      cls.representative = cls.min;
      part.classes.push_back(std::move(cls));
    }
  }
  std::vector<std::uint8_t> max_seen(part.classes.size(), 0);
  for (std::uint64_t r = 0; r < total; ++r) {
    auto cid = class_at_root[root_of[r]];
    if (cid < 0) throw VerificationError("class without a minimum");
    part.class_of[r] = cid;
    EquivalenceClass& cls = part.classes[cid];
    ++cls.size;
    if (with_members) cls.members.push_back(static_cast<std::uint32_t>(r));
    if (!has_up[r]) {
      if (max_seen[cid]) throw VerificationError("class maximum is not unique");
      max_seen[cid] = 1;
      cls.max = Permutation::from_lex_rank(n, r);
    }
  }
  for (std::size_t i = 0; i < part.classes.size(); ++i)
    if (!max_seen[i]) throw VerificationError("class without a maximum");
  return part;
}

std::uint64_t count_classes(const Congruence& c) {
  int n = c.n();
  if (n > kClassBudget)
    throw BudgetError("count_classes: n <= " + std::to_string(kClassBudget));
  auto total = factorial(n);
  UnionFind uf = unite_bars(c);
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < total; ++r)
    count += uf.find(static_cast<std::int32_t>(r)) ==
             static_cast<std::int32_t>(r);
  return count;
}

std::vector<Permutation> class_projection(const ClassPartition& part,
                                          int class_id) {
  if (part.n < 1)
    throw InvalidInputError("class_projection requires n >= 1");
  const EquivalenceClass& cls = part.classes.at(class_id);
  if (cls.members.size() != cls.size)
    throw InvalidInputError(
        "class_projection requires a partition with member lists");
  std::vector<Permutation> out;
  for (std::uint32_t r : cls.members)
    out.push_back(remove_largest(Permutation::from_lex_rank(part.n, r)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RailSegment> rail_segments(const Congruence& c,
                                       const Permutation& q) {
  int n = c.n();
  if (q.size() != n - 1)
    throw InvalidInputError("rail_segments: q must have length n-1");
  if (n >= 2 && c.contains(make_fence(n - 1, n)))
    throw RailCollapseError(
        "rail collapses: f(n-1,n,{}) is contracted by the congruence");

  std::vector<RailSegment> segments;
  int first = n;
  // The edge between c_{i+1}(q) and c_i(q) transposes q's i-th entry with n;
  // the values of ]a_i,n[ left of the pair are the earlier entries exceeding
  // a_i.
  std::uint16_t prefix = 0;
  std::vector<std::uint16_t> prefix_at(n, 0);
  for (int i = 1; i <= n - 1; ++i) {
    prefix_at[i - 1] = prefix;
    prefix |= 1u << (q.at(i) - 1);
  }
  for (int i = n - 1; i >= 1; --i) {
    int a = q.at(i);
    std::uint16_t left =
        prefix_at[i - 1] & interior_mask(a, n);
    if (!c.bar_between_values(a, n, left)) {
      segments.push_back({first, i + 1});
      first = i;
    }
  }
  segments.push_back({first, 1});
  return segments;
}

}  // namespace qtope
