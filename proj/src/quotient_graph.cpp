#include "qtope/quotient_graph.hpp"

#include <algorithm>
#include <bitset>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_set>

namespace qtope {

namespace {

constexpr int kCanonMaxNodes = 128;

struct PairHash {
  std::size_t operator()(const std::pair<int, int>& p) const {
    return std::hash<std::uint64_t>()(
        (static_cast<std::uint64_t>(p.first) << 32) ^
        static_cast<std::uint64_t>(p.second));
  }
};

}  // namespace

bool QuotientGraph::adjacent(int x, int y) const {
  const auto& nb = adj[x];
  return std::binary_search(nb.begin(), nb.end(), y);
}

QuotientGraph build_quotient_graph(const ClassPartition& part) {
  int n = part.n;
  QuotientGraph g;
  g.n = n;
  g.node_count = static_cast<int>(part.classes.size());
  g.adj.assign(g.node_count, {});

  // Labels come from the ascents of each class maximum (they reach every
  // up-neighbor exactly once).
  std::map<std::pair<int, int>, std::pair<int, int>> labels;
  for (const EquivalenceClass& cls : part.classes) {
    const Permutation& rho = cls.max;
    for (int i = 1; i < n; ++i) {
      if (!rho.ascent_at(i)) continue;
      Permutation q = rho.swapped(i);
      int other = part.class_id_of(q);
      if (other == cls.id) continue;  // bar
      auto key = std::minmax(cls.id, other);
      labels.emplace(key,
                     std::make_pair(std::min(rho.at(i), rho.at(i + 1)),
                                    std::max(rho.at(i), rho.at(i + 1))));
    }
  }

  // Contract all cover edges; the label pass above must cover exactly the
  // edges found here.
  std::unordered_set<std::pair<int, int>, PairHash> seen;
  auto total = factorial(n);
  for (std::uint64_t r = 0; r < total; ++r) {
    Permutation p = Permutation::from_lex_rank(n, r);
    int x = part.class_of[r];
    for (int i = 1; i < n; ++i) {
      if (!p.ascent_at(i)) continue;
      int y = part.class_of[p.swapped(i).lex_rank()];
      if (x == y) continue;
      auto key = std::minmax(x, y);
      if (seen.insert(key).second) {
        auto it = labels.find(key);
        if (it == labels.end())
          throw VerificationError(
              "quotient edge not reachable from a class maximum");
        g.edges.push_back({key.first, key.second, it->second.first,
                           it->second.second});
      }
    }
  }
  if (seen.size() != labels.size())
    throw VerificationError("label pass and contraction disagree");

  std::sort(g.edges.begin(), g.edges.end(),
            [](const QuotientGraph::Edge& a, const QuotientGraph::Edge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  for (const auto& e : g.edges) {
    g.adj[e.u].push_back(e.v);
    g.adj[e.v].push_back(e.u);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  g.degree.resize(g.node_count);
  for (int v = 0; v < g.node_count; ++v)
    g.degree[v] = static_cast<int>(g.adj[v].size());
  return g;
}

int class_degree(const ClassPartition& part, int class_id) {
  const EquivalenceClass& cls = part.classes.at(class_id);
  return cls.min.descents() + cls.max.ascents();
}

int min_degree(const QuotientGraph& g) {
  return *std::min_element(g.degree.begin(), g.degree.end());
}

int max_degree(const QuotientGraph& g) {
  return *std::max_element(g.degree.begin(), g.degree.end());
}

bool is_regular_graph(const QuotientGraph& g) {
  return min_degree(g) == max_degree(g);
}

bool is_connected(const QuotientGraph& g) {
  if (g.node_count == 0) return true;
  std::vector<std::uint8_t> seen(g.node_count, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == g.node_count;
}

bool is_bipartite_graph(const QuotientGraph& g) {
  std::vector<int> color(g.node_count, -1);
  for (int s = 0; s < g.node_count; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v]) {
        if (color[w] == -1) {
          color[w] = color[v] ^ 1;
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_regular(const Congruence& c) {
  if (!c.essential())
    throw NotEssentialError(
        "regularity characterization requires an essential congruence");
  for (const Fence& f : reduced_diagram(c).arcs)
    if (!is_simple_arc(f)) return false;
  return true;
}

bool is_vertex_transitive(const Congruence& c) {
  if (!c.essential())
    throw NotEssentialError(
        "vertex-transitivity characterization requires an essential "
        "congruence");
  int n = c.n();
  ArcDiagram diagram = reduced_diagram(c);

  // Loops: both short arcs between s-1 and s+1 present. Short arcs are
  // always maximal in an essential downset, so membership in the downset and
  // in the reduced diagram coincide.
  std::vector<int> cuts;
  for (int s = 2; s <= n - 1; ++s) {
    if (c.contains(make_fence(s - 1, s + 1)) &&
        c.contains(make_fence(s - 1, s + 1, {s})))
      cuts.push_back(s);
  }

  auto is_loop_arc = [&](const Fence& f) {
    return f.b - f.a == 2 &&
           std::binary_search(cuts.begin(), cuts.end(), f.a + 1) &&
           (f.left == 0 || f.left == interior_mask(f.a, f.b));
  };

  // Segment boundaries; each non-loop arc must lie inside one segment.
  std::vector<int> bounds{1};
  bounds.insert(bounds.end(), cuts.begin(), cuts.end());
  bounds.push_back(n);
  for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
    int u = bounds[s], v = bounds[s + 1];
    std::vector<Fence> inside;
    for (const Fence& f : diagram.arcs) {
      if (is_loop_arc(f)) continue;
      if (f.a >= u && f.b <= v) inside.push_back(f);
    }
    if (inside.empty()) continue;  // factor is a weak order S_{v-u+1}
    if (v - u != 2 || inside.size() != 1) return false;
    const Fence& f = inside.front();
    if (f.a != u || f.b != v) return false;  // must be the short arc
  }
  // Arcs crossing a cut are forced below the loop fences, hence never
  // maximal; anything left unaccounted means the diagram is not a product.
  for (const Fence& f : diagram.arcs) {
    if (is_loop_arc(f)) continue;
    bool placed = false;
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s)
      if (f.a >= bounds[s] && f.b <= bounds[s + 1]) placed = true;
    if (!placed) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical labeling: iterated neighborhood refinement plus backtracking
// individualization, tracking the minimum adjacency encoding.

namespace {

struct CanonGraph {
  int nv = 0;
  std::vector<std::bitset<kCanonMaxNodes>> rows;
};

CanonGraph to_canon_graph(const QuotientGraph& g) {
  if (g.node_count > kCanonMaxNodes)
    throw BudgetError("canonical labeling supports at most 128 nodes");
  CanonGraph cg;
  cg.nv = g.node_count;
  cg.rows.assign(cg.nv, {});
  for (const auto& e : g.edges) {
    cg.rows[e.u].set(e.v);
    cg.rows[e.v].set(e.u);
  }
  return cg;
}

// Refines colors until stable: new color = rank of (old color, multiset of
// neighbor colors).
void refine(const CanonGraph& g, std::vector<int>& color) {
  int nv = g.nv;
  std::vector<std::vector<int>> sig(nv);
  for (;;) {
    for (int v = 0; v < nv; ++v) {
      sig[v].clear();
      sig[v].push_back(color[v]);
      for (int w = 0; w < nv; ++w)
        if (g.rows[v][w]) sig[v].push_back(color[w]);
      std::sort(sig[v].begin() + 1, sig[v].end());
    }
    std::vector<int> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return sig[x] < sig[y]; });
    std::vector<int> next(nv);
    int classes = 0;
    for (int i = 0; i < nv; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++classes;
      next[order[i]] = classes;
    }
    bool stable = true;
    for (int v = 0; v < nv; ++v)
      if (next[v] != color[v]) stable = false;
    color = std::move(next);
    if (stable || classes == nv - 1) return;
  }
}

CanonicalForm encode(const CanonGraph& g, const std::vector<int>& label_of) {
  // label_of[v] = position of v in the canonical order.
  int nv = g.nv;
  std::vector<int> at(nv);
  for (int v = 0; v < nv; ++v) at[label_of[v]] = v;
  CanonicalForm out;
  out.push_back(static_cast<std::uint64_t>(nv));
  std::uint64_t word = 0;
  int bits = 0;
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j) {
      word = (word << 1) | (g.rows[at[i]][at[j]] ? 1 : 0);
      if (++bits == 64) {
        out.push_back(word);
        word = 0;
        bits = 0;
      }
    }
  if (bits) out.push_back(word << (64 - bits));
  return out;
}

void canon_search(const CanonGraph& g, std::vector<int> color,
                  std::optional<CanonicalForm>& best) {
  refine(g, color);
  int nv = g.nv;
  // First smallest non-singleton color class.
  std::vector<int> cells(nv, 0);
  for (int v = 0; v < nv; ++v) ++cells[color[v]];
  int target = -1;
  for (int c = 0; c < nv; ++c)
    if (cells[c] > 1) {
      target = c;
      break;
    }
  if (target == -1) {
    CanonicalForm form = encode(g, color);
    if (!best || form < *best) best = std::move(form);
    return;
  }
  for (int v = 0; v < nv; ++v) {
    if (color[v] != target) continue;
    std::vector<int> branched(nv);
    for (int w = 0; w < nv; ++w)
      branched[w] = 2 * color[w] + (w == v ? 0 : 1);
    canon_search(g, std::move(branched), best);
  }
}

CanonicalForm canonical_form_colored(const CanonGraph& g,
                                     std::vector<int> color) {
  std::optional<CanonicalForm> best;
  canon_search(g, std::move(color), best);
  return *best;
}

}  // namespace

CanonicalForm canonical_form(const QuotientGraph& g) {
  CanonGraph cg = to_canon_graph(g);
  return canonical_form_colored(cg, std::vector<int>(cg.nv, 0));
}

CanonicalForm rooted_canonical_form(const QuotientGraph& g, int root) {
  CanonGraph cg = to_canon_graph(g);
  std::vector<int> color(cg.nv, 1);
  color[root] = 0;
  return canonical_form_colored(cg, std::move(color));
}

bool is_vertex_transitive_graph(const QuotientGraph& g) {
  if (g.node_count <= 1) return true;
  if (!is_regular_graph(g)) return false;
  CanonicalForm base = rooted_canonical_form(g, 0);
  for (int v = 1; v < g.node_count; ++v)
    if (rooted_canonical_form(g, v) != base) return false;
  return true;
}

std::uint64_t count_regular(int n) {
  std::uint64_t c = catalan(n - 1);
  return c * c;
}

std::uint64_t count_vertex_transitive(int n) {
  return weighted_composition_sum(n - 1, 3);
}

std::uint64_t count_vt_noniso(int n) { return twos_in_all_partitions(n + 1); }

NonIsoCounts count_noniso(int n) {
  if (n > 5) throw BudgetError("count_noniso: n <= 5");
  std::set<CanonicalForm> all, regular, transitive;
  enumerate_essential_congruences(n, [&](const Congruence& c) {
    ClassPartition part = compute_classes(c, /*with_members=*/false);
    QuotientGraph g = build_quotient_graph(part);
    CanonicalForm form = canonical_form(g);
    if (is_regular(c)) regular.insert(form);
    if (is_vertex_transitive(c)) transitive.insert(form);
    all.insert(std::move(form));
  });
  return {all.size(), regular.size(), transitive.size()};
}

std::uint64_t chain_bound_check(int n) {
  if (n > 8) throw BudgetError("chain_bound_check: n <= 8");
  const FenceTable& table = fence_table(n);
  const std::vector<int>& order = table.linear_extension_essential();

  FenceSet set(table.size());
  std::uint64_t previous = count_classes(Congruence(n));
  if (previous != factorial(n))
    throw VerificationError("empty congruence must have n! classes");
  std::uint64_t chain_length = 1;
  for (int idx : order) {
    set.set(idx);
    Congruence c = Congruence::from_set(n, set, /*trust_downset=*/true);
    std::uint64_t classes = count_classes(c);
    if (classes >= previous)
      throw VerificationError("class counts along the chain must decrease");
    previous = classes;
    ++chain_length;
  }
  if (previous != (std::uint64_t{1} << (n - 1)))
    throw VerificationError("full essential congruence must have 2^(n-1) classes");
  if (chain_length != essential_fence_count(n) + 1)
    throw VerificationError("chain length mismatch");
  return chain_length;
}

int max_degree_bound(int n) {
  // ceil(2 sqrt n) = smallest m with m^2 >= 4n.
  int m = 1;
  while (m * m < 4 * n) ++m;
  return 2 * n - m;
}

MaxDegreeWitness max_degree_witness(int n, bool with_class_id) {
  if (n < 2 || n > kMaxN)
    throw BudgetError("max_degree_witness: 2 <= n <= 12");

  // Fill 1..n into a table with ceil(sqrt(n)) columns, rows bottom to top.
  int s = 1;
  while (s * s < n) ++s;
  int rows = (n + s - 1) / s;

  auto cell = [&](int row, int col) {  // 1-based, row 1 = bottom
    int v = (row - 1) * s + col;
    return v <= n ? v : 0;
  };

  // pi: read columns left to right, top to bottom within a column.
  std::vector<int> pi_entries;
  for (int col = 1; col <= s; ++col)
    for (int row = rows; row >= 1; --row)
      if (int v = cell(row, col)) pi_entries.push_back(v);
  Permutation pi(pi_entries);

  // rho: read rows top to bottom, left to right within a row.
  std::vector<int> rho_entries;
  for (int row = rows; row >= 1; --row)
    for (int col = 1; col <= s; ++col)
      if (int v = cell(row, col)) rho_entries.push_back(v);
  Permutation rho(rho_entries);

  // One fence per diagonal pair: b one row above and one column right of a.
  std::vector<Fence> generators;
  for (int row = 1; row < rows; ++row)
    for (int col = 1; col < s; ++col) {
      int a = cell(row, col);
      int b = cell(row + 1, col + 1);
      if (!a || !b) continue;
      std::vector<int> left;
      for (int c2 = 1; c2 <= col; ++c2) left.push_back(cell(row + 1, c2));
      generators.push_back(make_fence(a, b, left));
    }
  Congruence c = Congruence::closure(n, generators);

  // pi is a local minimum and rho a local maximum of their class.
  for (int i = 1; i < n; ++i) {
    if (!pi.ascent_at(i) && c.is_bar(pi, pi.swapped(i)))
      throw VerificationError("witness minimum has an intra-class down-edge");
    if (rho.ascent_at(i) && c.is_bar(rho, rho.swapped(i)))
      throw VerificationError("witness maximum has an intra-class up-edge");
  }

  // pi and rho are congruent: climb from pi to rho through bars.
  Permutation cur = pi;
  InversionSet target = inversion_set(rho);
  while (!(cur == rho)) {
    bool stepped = false;
    for (int i = 1; i < n && !stepped; ++i) {
      if (!cur.ascent_at(i)) continue;
      Permutation up = cur.swapped(i);
      if (!inversion_set(up).subset_of(target)) continue;
      if (!c.is_bar(cur, up))
        throw VerificationError("witness interval contains a non-bar edge");
      cur = up;
      stepped = true;
    }
    if (!stepped)
      throw VerificationError("witness chain from min to max is stuck");
  }

  MaxDegreeWitness w;
  w.class_min = pi;
  w.class_max = rho;
  w.degree = pi.descents() + rho.ascents();
  if (w.degree != max_degree_bound(n))
    throw VerificationError("witness degree does not meet 2n - ceil(2 sqrt n)");
  if (with_class_id) {
    ClassPartition part = compute_classes(c, /*with_members=*/false);
    int id = part.class_id_of(pi);
    if (part.class_id_of(rho) != id ||
        !(part.classes[id].min == pi) || !(part.classes[id].max == rho))
      throw VerificationError("witness class does not match the construction");
    if (class_degree(part, id) != w.degree)
      throw VerificationError("witness class degree mismatch");
    w.class_id = id;
  }
  w.congruence = std::move(c);
  return w;
}

BipartiteProbe bipartite_probe(const Congruence& c, const QuotientGraph& g) {
  BipartiteProbe probe;
  probe.graph_bipartite = is_bipartite_graph(g);

  // Conjectured criterion: the downset is a union of complete arc sets
  // A(a,b) (b - a >= 2) whose intervals are pairwise non-nesting. The
  // maximal fences then group into complete (a,b)-families.
  ArcDiagram diagram = reduced_diagram(c);
  std::map<std::pair<int, int>, int> family;
  for (const Fence& f : diagram.arcs) ++family[{f.a, f.b}];
  bool ok = true;
  for (const auto& [interval, arcs] : family) {
    auto [a, b] = interval;
    if (b - a < 2 || arcs != (1 << (b - a - 1))) ok = false;
  }
  for (auto it = family.begin(); ok && it != family.end(); ++it)
    for (auto jt = family.begin(); jt != family.end(); ++jt) {
      if (it == jt) continue;
      // nesting: [c,d] strictly inside [a,b]
      if (it->first.first <= jt->first.first &&
          jt->first.second <= it->first.second)
        ok = false;
    }
  probe.conjecture_predicts = ok;
  return probe;
}

BipartiteProbe bipartite_probe(const Congruence& c) {
  ClassPartition part = compute_classes(c, /*with_members=*/false);
  return bipartite_probe(c, build_quotient_graph(part));
}

// ---------------------------------------------------------------------------
// Hamilton cycle search: plain backtracking with fewest-free-neighbors
// ordering and a dead-end degree prune.

namespace {

struct CycleSearch {
  const QuotientGraph& g;
  std::vector<std::uint8_t> on_path;
  std::vector<int> free_degree;  // neighbors not yet on the path
  std::vector<int> path;
  std::uint64_t budget;
  bool found = false;
  bool exhausted = false;

  explicit CycleSearch(const QuotientGraph& g, std::uint64_t budget)
      : g(g),
        on_path(g.node_count, 0),
        free_degree(g.degree),
        budget(budget) {}

  void take(int v) {
    on_path[v] = 1;
    path.push_back(v);
    for (int w : g.adj[v]) --free_degree[w];
  }
  void drop(int v) {
    on_path[v] = 0;
    path.pop_back();
    for (int w : g.adj[v]) ++free_degree[w];
  }

  bool prune(int current) {
    // Any vertex not on the path needs two usable connections; the start
    // vertex 0 and the current endpoint each provide one potential hook.
    for (int v = 0; v < g.node_count; ++v) {
      if (on_path[v]) continue;
      int usable = free_degree[v];
      if (g.adjacent(v, current)) ++usable;
      if (g.adjacent(v, 0)) ++usable;
      if (usable < 2) return true;
    }
    return false;
  }

  void run(int v) {
    if (found || exhausted) return;
    if (budget-- == 0) {
      exhausted = true;
      return;
    }
    if (static_cast<int>(path.size()) == g.node_count) {
      if (g.adjacent(v, 0)) found = true;
      return;
    }
    if (prune(v)) return;
    std::vector<int> next;
    for (int w : g.adj[v])
      if (!on_path[w]) next.push_back(w);
    std::sort(next.begin(), next.end(),
              [&](int x, int y) { return free_degree[x] < free_degree[y]; });
    for (int w : next) {
      take(w);
      run(w);
      if (found) return;
      drop(w);
    }
  }
};

}  // namespace

namespace {

// Posa rotation-extension: repeatedly rotate a Hamilton path at neighbors of
// its moving endpoint until the two ends are adjacent. Incomplete but very
// effective on dense polytope graphs; bounded by `rotation_budget`.
std::optional<std::vector<int>> close_by_rotations(
    const QuotientGraph& g, std::vector<int> path,
    std::uint64_t rotation_budget) {
  if (path.size() != static_cast<std::size_t>(g.node_count)) return std::nullopt;
  std::vector<int> pos(g.node_count);
  for (std::size_t i = 0; i < path.size(); ++i) pos[path[i]] = int(i);
  std::vector<std::uint8_t> endpoint_seen(g.node_count, 0);
  for (std::uint64_t step = 0; step < rotation_budget; ++step) {
    int last = path.back();
    if (g.adjacent(last, path.front())) return path;
    if (endpoint_seen[last]) return std::nullopt;
    endpoint_seen[last] = 1;
    // Rotate at the neighbor whose successor becomes a fresh endpoint.
    int pivot = -1;
    for (int w : g.adj[last]) {
      int i = pos[w];
      if (i + 1 < int(path.size()) - 1 && !endpoint_seen[path[i + 1]]) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::reverse(path.begin() + pivot + 1, path.end());
    for (std::size_t i = pivot + 1; i < path.size(); ++i) pos[path[i]] = int(i);
  }
  return std::nullopt;
}

}  // namespace

HamiltonCycleResult hamilton_cycle(const QuotientGraph& g,
                                   std::uint64_t node_budget) {
  return hamilton_cycle(g, {}, node_budget);
}

HamiltonCycleResult hamilton_cycle(const QuotientGraph& g,
                                   const std::vector<int>& seed_path,
                                   std::uint64_t node_budget) {
  HamiltonCycleResult result;
  if (g.node_count < 3) {
    result.decided = true;
    return result;
  }
  if (!is_connected(g)) {
    result.decided = true;
    return result;
  }
  if (!seed_path.empty()) {
    if (auto cycle = close_by_rotations(g, seed_path, 4096)) {
      result.decided = true;
      result.cycle = std::move(*cycle);
      return result;
    }
  }
  CycleSearch search(g, node_budget);
  search.take(0);
  search.run(0);
  if (search.found) {
    result.decided = true;
    result.cycle = search.path;
  } else {
    result.decided = !search.exhausted;
  }
  return result;
}

QuotientGraph cartesian_product(const QuotientGraph& g,
                                const QuotientGraph& h) {
  QuotientGraph p;
  p.node_count = g.node_count * h.node_count;
  p.adj.assign(p.node_count, {});
  auto id = [&](int x, int y) { return x * h.node_count + y; };
  for (int x = 0; x < g.node_count; ++x)
    for (const auto& e : h.edges)
      p.edges.push_back({id(x, e.u), id(x, e.v), 0, 0});
  for (int y = 0; y < h.node_count; ++y)
    for (const auto& e : g.edges) {
      int u = id(e.u, y), v = id(e.v, y);
      p.edges.push_back({std::min(u, v), std::max(u, v), 0, 0});
    }
  std::sort(p.edges.begin(), p.edges.end(),
            [](const QuotientGraph::Edge& a, const QuotientGraph::Edge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  for (const auto& e : p.edges) {
    p.adj[e.u].push_back(e.v);
    p.adj[e.v].push_back(e.u);
  }
  for (auto& nb : p.adj) std::sort(nb.begin(), nb.end());
  p.degree.resize(p.node_count);
  for (int v = 0; v < p.node_count; ++v)
    p.degree[v] = static_cast<int>(p.adj[v].size());
  return p;
}

}  // namespace qtope
