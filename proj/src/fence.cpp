#include "qtope/fence.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <memory>
#include <mutex>
#include <thread>

namespace qtope {

std::vector<int> Fence::left_values() const {
  std::vector<int> out;
  for (int v = a + 1; v < b; ++v)
    if (left & (1u << (v - 1))) out.push_back(v);
  return out;
}

std::uint16_t interior_mask(int a, int b) {
  // values a+1 .. b-1  ->  bits a .. b-2
  return static_cast<std::uint16_t>(((1u << (b - 1)) - 1) & ~((1u << a) - 1));
}

Fence make_fence(int a, int b, std::span<const int> left) {
  if (a < 1 || b <= a || b > kMaxN)
    throw InvalidInputError("fence requires 1 <= a < b <= " +
                            std::to_string(kMaxN));
  std::uint16_t mask = 0;
  for (int v : left) {
    if (v <= a || v >= b)
      throw InvalidInputError("fence left set must lie strictly between a and b");
    mask |= 1u << (v - 1);
  }
  return Fence{static_cast<std::int8_t>(a), static_cast<std::int8_t>(b), mask};
}

Fence make_fence(int a, int b, std::initializer_list<int> left) {
  return make_fence(a, b, std::span<const int>(left.begin(), left.size()));
}

bool forcing_less(const Fence& f, const Fence& g) {
  if (!(f.a <= g.a && g.a < g.b && g.b <= f.b)) return false;
  if (f.a == g.a && f.b == g.b) return false;
  return (f.left & interior_mask(g.a, g.b)) == g.left;
}

std::uint64_t fence_count(int n, int k) {
  if (k < 1 || k > n - 1)
    throw InvalidInputError("fence_count requires 1 <= k <= n-1");
  return static_cast<std::uint64_t>(n - k) << (k - 1);
}

std::uint64_t total_fence_count(int n) {
  std::uint64_t s = 0;
  for (int k = 1; k <= n - 1; ++k) s += fence_count(n, k);
  return s;
}

std::uint64_t essential_fence_count(int n) {
  return (std::uint64_t{1} << n) - 2 * static_cast<std::uint64_t>(n);
}

FenceTable::FenceTable(int n) : n_(n) {
  start_.assign((n + 1) * (n + 1), -1);
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      start_[a * (n + 1) + b] = static_cast<int>(fences_.size());
      int interior = b - a - 1;
      for (std::uint32_t m = 0; m < (1u << interior); ++m)
        fences_.push_back(Fence{static_cast<std::int8_t>(a),
                                static_cast<std::int8_t>(b),
                                static_cast<std::uint16_t>(m << a)});
    }

  int total = size();
  upper_.assign(total, {-1, -1});
  lower_.assign(total, {-1, -1, -1, -1});
  for (int i = 0; i < total; ++i) {
    const Fence& f = fences_[i];
    if (f.b - f.a >= 2) {
      upper_[i][0] = index_of(f.a + 1, f.b,
                              f.left & ~static_cast<std::uint16_t>(1u << f.a));
      upper_[i][1] =
          index_of(f.a, f.b - 1,
                   f.left & ~static_cast<std::uint16_t>(1u << (f.b - 2)));
    }
    int k = 0;
    if (f.a >= 2) {
      // widening to [a-1, b] makes the old endpoint a an interior value
      lower_[i][k++] = index_of(f.a - 1, f.b, f.left);
      lower_[i][k++] = index_of(
          f.a - 1, f.b, f.left | static_cast<std::uint16_t>(1u << (f.a - 1)));
    }
    if (f.b <= n - 1) {
      lower_[i][k++] = index_of(f.a, f.b + 1, f.left);
      lower_[i][k++] = index_of(
          f.a, f.b + 1, f.left | static_cast<std::uint16_t>(1u << (f.b - 1)));
    }
    essential_count_ += fences_[i].essential();
  }

  linext_.resize(total);
  for (int i = 0; i < total; ++i) linext_[i] = i;
  std::stable_sort(linext_.begin(), linext_.end(), [&](int x, int y) {
    return fences_[x].b - fences_[x].a > fences_[y].b - fences_[y].a;
  });
  for (int idx : linext_)
    if (fences_[idx].essential()) linext_essential_.push_back(idx);
}

bool FenceTable::valid(const Fence& f) const {
  return f.a >= 1 && f.a < f.b && f.b <= n_ &&
         (f.left & ~interior_mask(f.a, f.b)) == 0;
}

int FenceTable::index_of(const Fence& f) const {
  if (!valid(f)) throw InvalidInputError("fence is not valid for n=" +
                                         std::to_string(n_));
  return index_of(f.a, f.b, f.left);
}

const FenceTable& fence_table(int n) {
  if (n < 0 || n > kMaxN) throw BudgetError("fence_table: n out of range");
  static std::array<std::unique_ptr<FenceTable>, kMaxN + 1> tables;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (!tables[n]) tables[n] = std::make_unique<FenceTable>(n);
  return *tables[n];
}

int FenceSet::count() const {
  int c = 0;
  for (std::uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool FenceSet::subset_of(const FenceSet& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

Congruence::Congruence(int n) : n_(n), set_(fence_table(n).size()) {}

Congruence Congruence::closure(int n, std::span<const Fence> generators) {
  const FenceTable& table = fence_table(n);
  Congruence c(n);
  std::vector<int> stack;
  for (const Fence& f : generators) {
    int idx = table.index_of(f);
    if (!c.set_.test(idx)) {
      c.set_.set(idx);
      stack.push_back(idx);
    }
  }
  while (!stack.empty()) {
    int idx = stack.back();
    stack.pop_back();
    for (int lo : table.lower_covers(idx)) {
      if (lo >= 0 && !c.set_.test(lo)) {
        c.set_.set(lo);
        stack.push_back(lo);
      }
    }
  }
  c.essential_ = true;
  for (const Fence& f : generators)
    if (!f.essential()) c.essential_ = false;
  return c;
}

Congruence Congruence::from_set(int n, FenceSet set, bool trust_downset) {
  const FenceTable& table = fence_table(n);
  if (set.bit_count() != table.size())
    throw InvalidInputError("fence set has wrong size for n");
  Congruence c(n);
  c.set_ = std::move(set);
  if (!trust_downset && !c.is_downset())
    throw InvalidInputError("fence set is not a downset of the forcing order");
  c.essential_ = true;
  for (int i = 0; i < table.size(); ++i)
    if (c.set_.test(i) && !table.fence(i).essential()) c.essential_ = false;
  return c;
}

bool Congruence::contains(const Fence& f) const {
  const FenceTable& table = fence_table(n_);
  if (!table.valid(f)) return false;
  return set_.test(table.index_of(f.a, f.b, f.left));
}

bool Congruence::is_downset() const {
  const FenceTable& table = fence_table(n_);
  for (int i = 0; i < table.size(); ++i) {
    if (!set_.test(i)) continue;
    for (int lo : table.lower_covers(i))
      if (lo >= 0 && !set_.test(lo)) return false;
  }
  return true;
}

std::vector<Fence> Congruence::fences() const {
  const FenceTable& table = fence_table(n_);
  std::vector<Fence> out;
  for (int i = 0; i < table.size(); ++i)
    if (set_.test(i)) out.push_back(table.fence(i));
  return out;
}

Congruence Congruence::restriction() const {
  if (n_ < 1) throw InvalidInputError("restriction requires n >= 1");
  const FenceTable& table = fence_table(n_);
  const FenceTable& small = fence_table(n_ - 1);
  Congruence r(n_ - 1);
  for (int i = 0; i < table.size(); ++i) {
    if (!set_.test(i)) continue;
    const Fence& f = table.fence(i);
    if (f.b < n_) r.set_.set(small.index_of(f.a, f.b, f.left));
  }
  if (!r.is_downset())
    throw VerificationError("restriction is not a downset");  // Lemma violated
  r.essential_ = true;
  for (int i = 0; i < small.size(); ++i)
    if (r.set_.test(i) && !small.fence(i).essential()) r.essential_ = false;
  return r;
}

bool Congruence::is_bar(const Permutation& p, const Permutation& q) const {
  Fence f = edge_fence(p, q);
  return set_.test(fence_table(n_).index_of(f.a, f.b, f.left));
}

bool Congruence::subset_of(const Congruence& o) const {
  if (n_ != o.n_) throw InvalidInputError("subset_of: different n");
  return set_.subset_of(o.set_);
}

void Congruence::assign_word0(std::uint64_t w, bool essential) {
  set_.words()[0] = w;
  essential_ = essential;
}

// Grants the enumerator in-place access to a scratch Congruence.
struct CongruenceScratch {
  Congruence value;
  explicit CongruenceScratch(int n) : value(n) {}
  void assign(std::uint64_t w, bool essential) {
    value.assign_word0(w, essential);
  }
};

bool is_simple_arc(const Fence& f) {
  return f.b - f.a >= 2 &&
         (f.left == 0 || f.left == interior_mask(f.a, f.b));
}

ArcDiagram reduced_diagram(const Congruence& c) {
  const FenceTable& table = fence_table(c.n());
  ArcDiagram d;
  d.n = c.n();
  for (int i = 0; i < table.size(); ++i) {
    if (!c.contains_index(i)) continue;
    bool maximal = true;
    for (int up : table.upper_covers(i))
      if (up >= 0 && c.contains_index(up)) maximal = false;
    if (maximal) d.arcs.push_back(table.fence(i));
  }
  return d;
}

Congruence from_diagram(const ArcDiagram& d) {
  for (std::size_t i = 0; i < d.arcs.size(); ++i)
    for (std::size_t j = 0; j < d.arcs.size(); ++j)
      if (i != j && forcing_less(d.arcs[i], d.arcs[j]))
        throw InvalidInputError("diagram arcs must be pairwise incomparable");
  return Congruence::closure(d.n, d.arcs);
}

Congruence downset_closure(int n, std::span<const Fence> generators) {
  return Congruence::closure(n, generators);
}

Fence edge_fence(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw InvalidInputError("edge_fence: permutations have different lengths");
  int n = p.size();
  int swap_pos = 0;
  for (int i = 1; i <= n; ++i) {
    if (p.at(i) != q.at(i)) {
      if (i == n || p.at(i) != q.at(i + 1) || p.at(i + 1) != q.at(i))
        throw InvalidInputError(
            "edge_fence: permutations do not differ by one adjacent "
            "transposition");
      swap_pos = i;
      for (int j = i + 2; j <= n; ++j)
        if (p.at(j) != q.at(j))
          throw InvalidInputError(
              "edge_fence: permutations do not differ by one adjacent "
              "transposition");
      break;
    }
  }
  if (swap_pos == 0)
    throw InvalidInputError("edge_fence: permutations are equal");
  int a = std::min(p.at(swap_pos), p.at(swap_pos + 1));
  int b = std::max(p.at(swap_pos), p.at(swap_pos + 1));
  std::uint16_t prefix = 0;
  for (int i = 1; i < swap_pos; ++i) prefix |= 1u << (p.at(i) - 1);
  return Fence{static_cast<std::int8_t>(a), static_cast<std::int8_t>(b),
               static_cast<std::uint16_t>(prefix & interior_mask(a, b))};
}

std::vector<std::pair<Permutation, Permutation>> fence_edges(const Fence& f,
                                                             int n) {
  if (n > 10) throw BudgetError("fence_edges enumerates S_n: n <= 10");
  if (!fence_table(n).valid(f))
    throw InvalidInputError("fence is not valid for n");
  std::vector<std::pair<Permutation, Permutation>> out;
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = i + 1;
  std::uint16_t inside = interior_mask(f.a, f.b);
  do {
    // Look for the ascent "a b"; check side conditions for interior values.
    int pos = -1;
    for (int i = 0; i + 1 < n; ++i)
      if (e[i] == f.a && e[i + 1] == f.b) pos = i;
    if (pos < 0) continue;
    std::uint16_t prefix = 0;
    for (int i = 0; i < pos; ++i) prefix |= 1u << (e[i] - 1);
    if ((prefix & inside) != f.left) continue;
    Permutation lo(e);
    out.emplace_back(lo, lo.swapped(pos + 1));
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

// ---------------------------------------------------------------------------
// Downset enumeration.
//
// Downsets are built by adding fences in increasing position of a linear
// extension of the forcing order (interval length descending). Every downset
// has exactly one such increasing build sequence, so the DFS visits each one
// exactly once. A fence may be added once all its lower covers are present.

namespace {

struct EnumContext {
  std::vector<int> order;                 // fence indices, linear extension
  std::vector<std::uint64_t> lower_mask;  // per order position
  std::vector<std::uint64_t> bit;         // per order position
  std::uint64_t noness_mask = 0;
};

EnumContext make_context(int n, bool essential_only) {
  const FenceTable& table = fence_table(n);
  if (table.size() > 64)
    throw BudgetError("congruence enumeration supports at most 64 fences");
  EnumContext ctx;
  ctx.order = essential_only ? table.linear_extension_essential()
                             : table.linear_extension();
  ctx.lower_mask.resize(ctx.order.size());
  ctx.bit.resize(ctx.order.size());
  for (std::size_t j = 0; j < ctx.order.size(); ++j) {
    int idx = ctx.order[j];
    ctx.bit[j] = std::uint64_t{1} << idx;
    std::uint64_t m = 0;
    for (int lo : table.lower_covers(idx))
      if (lo >= 0) m |= std::uint64_t{1} << lo;
    ctx.lower_mask[j] = m;
  }
  for (int i = 0; i < table.size(); ++i)
    if (!table.fence(i).essential()) ctx.noness_mask |= std::uint64_t{1} << i;
  return ctx;
}

std::uint64_t dfs_count(const EnumContext& ctx, CongruenceScratch& scratch,
                        std::size_t from, std::uint64_t cur,
                        const std::function<void(const Congruence&)>& visit) {
  scratch.assign(cur, (cur & ctx.noness_mask) == 0);
  visit(scratch.value);
  std::uint64_t count = 1;
  for (std::size_t j = from; j < ctx.order.size(); ++j)
    if ((ctx.lower_mask[j] & ~cur) == 0)
      count += dfs_count(ctx, scratch, j + 1, cur | ctx.bit[j], visit);
  return count;
}

}  // namespace

std::uint64_t enumerate_impl(int n, bool essential_only, std::uint64_t seed,
                             const std::function<void(const Congruence&)>& visit) {
  EnumContext ctx = make_context(n, essential_only);
  CongruenceScratch scratch(n);
  (void)seed;
  return dfs_count(ctx, scratch, 0, 0, visit);
}

std::uint64_t enumerate_essential_congruences(
    int n, const std::function<void(const Congruence&)>& visit) {
  if (n < 1 || n > 6)
    throw BudgetError("enumerate_essential_congruences: n <= 6");
  return enumerate_impl(n, /*essential_only=*/true, 0, visit);
}

std::uint64_t enumerate_all_congruences(
    int n, const std::function<void(const Congruence&)>& visit) {
  if (n < 1 || n > 5) throw BudgetError("enumerate_all_congruences: n <= 5");
  return enumerate_impl(n, /*essential_only=*/false, 0, visit);
}

std::uint64_t parallel_enumerate_essential_congruences(
    int n, int jobs, const std::function<void(const Congruence&)>& visit) {
  if (n < 1 || n > 6)
    throw BudgetError("parallel_enumerate_essential_congruences: n <= 6");
  if (jobs <= 1) return enumerate_essential_congruences(n, visit);

  EnumContext ctx = make_context(n, /*essential_only=*/true);
  // The empty downset, then one task per addable first fence.
  {
    CongruenceScratch scratch(n);
    scratch.assign(0, true);
    visit(scratch.value);
  }
  std::vector<std::size_t> roots;
  for (std::size_t j = 0; j < ctx.order.size(); ++j)
    if (ctx.lower_mask[j] == 0) roots.push_back(j);

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> total{1};
  auto worker = [&]() {
    CongruenceScratch scratch(n);
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= roots.size()) break;
      std::size_t j = roots[t];
      total += dfs_count(ctx, scratch, j + 1, ctx.bit[j], visit);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return total.load();
}

}  // namespace qtope
