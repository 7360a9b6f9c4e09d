#include <map>
#include <set>

#include "doctest.h"
#include "qtope/genj.hpp"
#include "qtope/patterns.hpp"
#include "qtope/quotient_graph.hpp"
#include "test_support.hpp"

using namespace qtope;
using namespace qtope::testing;

namespace {

Congruence tamari(int n) {
  return congruence_from_patterns(WellBehavedSet({parse_pattern("2[31]")}), n);
}

Congruence hypercube(int n) {
  std::vector<Fence> gens;
  const FenceTable& table = fence_table(n);
  for (int i = 0; i < table.size(); ++i)
    if (table.fence(i).essential()) gens.push_back(table.fence(i));
  return downset_closure(n, gens);
}

QuotientGraph graph_of(const Congruence& c) {
  return build_quotient_graph(compute_classes(c, false));
}

bool is_cycle_graph(const QuotientGraph& g, int len) {
  if (g.node_count != len || static_cast<int>(g.edges.size()) != len)
    return false;
  return is_connected(g) && is_regular_graph(g) && g.degree[0] == 2;
}

// Random relabeling of a graph, for canonical-form invariance checks.
QuotientGraph relabel(const QuotientGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(g.node_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  QuotientGraph h;
  h.n = g.n;
  h.node_count = g.node_count;
  h.adj.assign(g.node_count, {});
  for (const auto& e : g.edges) {
    int u = perm[e.u], v = perm[e.v];
    h.edges.push_back({std::min(u, v), std::max(u, v), e.label_a, e.label_b});
  }
  std::sort(h.edges.begin(), h.edges.end(),
            [](const QuotientGraph::Edge& a, const QuotientGraph::Edge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  for (const auto& e : h.edges) {
    h.adj[e.u].push_back(e.v);
    h.adj[e.v].push_back(e.u);
  }
  for (auto& nb : h.adj) std::sort(nb.begin(), nb.end());
  h.degree.resize(h.node_count);
  for (int v = 0; v < h.node_count; ++v)
    h.degree[v] = static_cast<int>(h.adj[v].size());
  return h;
}

}  // namespace

TEST_CASE("quotient graph worked examples") {
  CHECK(is_cycle_graph(graph_of(Congruence(3)), 6));
  CHECK(is_cycle_graph(
      graph_of(downset_closure(3, std::vector<Fence>{make_fence(1, 3, {2})})),
      5));
  auto cube = graph_of(hypercube(4));
  CHECK(cube.node_count == 8);
  CHECK(cube.edges.size() == 12);
  CHECK(is_regular_graph(cube));
  CHECK(cube.degree[0] == 3);
  CHECK(is_bipartite_graph(cube));
}

TEST_CASE("edge labels name the transposed values") {
  auto g = graph_of(Congruence(2));
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].label_a == 1);
  CHECK(g.edges[0].label_b == 2);
  // On the full cover graph of S_3, labels partition by fence pair.
  auto g3 = graph_of(Congruence(3));
  std::map<std::pair<int, int>, int> label_counts;
  for (const auto& e : g3.edges) ++label_counts[{e.label_a, e.label_b}];
  CHECK(label_counts ==
        std::map<std::pair<int, int>, int>{{{1, 2}, 2}, {{1, 3}, 2}, {{2, 3}, 2}});
}

TEST_CASE("degree formula: graph degree = desc(min) + asc(max), n <= 4") {
  enumerate_essential_congruences(4, [](const Congruence& c) {
    auto part = compute_classes(c, false);
    auto g = build_quotient_graph(part);
    CHECK(is_connected(g));
    for (int v = 0; v < g.node_count; ++v)
      CHECK(g.degree[v] == class_degree(part, v));
  });
}

TEST_CASE("class degree worked examples") {
  // Identity class under an essential congruence has degree n-1.
  for (int n = 2; n <= 5; ++n) {
    auto part = compute_classes(tamari(n), false);
    CHECK(class_degree(part, part.class_id_of(Permutation::identity(n))) ==
          n - 1);
  }
  // The one-class congruence has degree 0.
  std::vector<Fence> all3;
  for (int i = 0; i < fence_table(3).size(); ++i)
    all3.push_back(fence_table(3).fence(i));
  auto one = compute_classes(downset_closure(3, all3), false);
  CHECK(class_degree(one, 0) == 0);
  // A non-simple arc produces a class of degree n.
  auto nonsimple =
      compute_classes(downset_closure(4, std::vector<Fence>{make_fence(1, 4, {2})}),
                      false);
  auto g = build_quotient_graph(nonsimple);
  CHECK(max_degree(g) == 4);
}

TEST_CASE("min and max degrees on the survey rows") {
  CHECK(min_degree(graph_of(tamari(5))) == 4);
  auto g2 = graph_of(Congruence(2));
  CHECK(min_degree(g2) == 1);
  CHECK(max_degree(g2) == 1);
  CHECK(max_degree_bound(2) == 1);
  CHECK(max_degree_bound(3) == 2);
  CHECK(max_degree_bound(4) == 4);
  CHECK(max_degree_bound(5) == 5);
  CHECK(max_degree_bound(6) == 7);
  CHECK(max_degree_bound(7) == 8);
}

TEST_CASE("max degree witness") {
  for (int n : {2, 3, 4, 5, 9, 12}) {
    auto w = max_degree_witness(n);
    CHECK(w.degree == max_degree_bound(n));
  }
  auto w4 = max_degree_witness(4, /*with_class_id=*/true);
  CHECK(w4.degree == 4);
  REQUIRE(w4.class_id.has_value());
  auto part = compute_classes(w4.congruence, false);
  auto g = build_quotient_graph(part);
  CHECK(g.degree[*w4.class_id] == 4);
  // Tightness of the table construction at n = 9.
  auto w9 = max_degree_witness(9);
  auto [r, s] = lis_lds(w9.class_min);
  CHECK(r + s == 6);
}

TEST_CASE("regularity: diagram route vs degree route, n <= 4") {
  CHECK(is_regular(tamari(4)));
  CHECK(is_regular(Congruence(4)));
  CHECK_FALSE(
      is_regular(downset_closure(4, std::vector<Fence>{make_fence(1, 4, {2})})));
  CHECK_THROWS_AS(
      is_regular(downset_closure(3, std::vector<Fence>{make_fence(1, 2)})),
      NotEssentialError);
  enumerate_essential_congruences(4, [](const Congruence& c) {
    CHECK(is_regular(c) == is_regular_graph(graph_of(c)));
  });
}

TEST_CASE("vertex transitivity: diagram route vs automorphism oracle, n <= 4") {
  CHECK(is_vertex_transitive(Congruence(4)));
  CHECK(is_vertex_transitive(
      downset_closure(3, std::vector<Fence>{make_fence(1, 3, {2})})));
  CHECK_FALSE(is_vertex_transitive(tamari(4)));
  CHECK_THROWS_AS(
      is_vertex_transitive(downset_closure(3, std::vector<Fence>{make_fence(1, 2)})),
      NotEssentialError);
  enumerate_essential_congruences(4, [](const Congruence& c) {
    CHECK(is_vertex_transitive(c) == is_vertex_transitive_graph(graph_of(c)));
  });
}

TEST_CASE("canonical forms are invariant under relabeling") {
  std::mt19937_64 rng(99);
  std::vector<Congruence> samples{
      Congruence(4), tamari(4), hypercube(4),
      downset_closure(4, std::vector<Fence>{make_fence(1, 4, {2})}),
      downset_closure(4, std::vector<Fence>{make_fence(1, 3, {2}),
                                            make_fence(2, 4, {3})})};
  for (const Congruence& c : samples) {
    auto g = graph_of(c);
    auto form = canonical_form(g);
    for (int trial = 0; trial < 5; ++trial)
      CHECK(canonical_form(relabel(g, rng)) == form);
  }
  // Distinct graphs get distinct forms.
  CHECK(canonical_form(graph_of(Congruence(3))) !=
        canonical_form(graph_of(
            downset_closure(3, std::vector<Fence>{make_fence(1, 3, {2})}))));
}

TEST_CASE("counting formulas against the survey table") {
  std::uint64_t expect_regular[] = {1, 4, 25, 196, 1764, 17424};
  std::uint64_t expect_vt[] = {1, 4, 8, 22, 52, 132};
  std::uint64_t expect_vt_noniso[] = {1, 3, 4, 8, 11, 19};
  for (int n = 2; n <= 7; ++n) {
    CHECK(count_regular(n) == expect_regular[n - 2]);
    CHECK(count_vertex_transitive(n) == expect_vt[n - 2]);
    CHECK(count_vt_noniso(n) == expect_vt_noniso[n - 2]);
    // The composition sum satisfies the linear recurrence.
    CHECK(count_vertex_transitive(n) == a052528(n - 1));
  }
}

TEST_CASE("enumeration filters agree with the formulas (n <= 4)") {
  for (int n = 2; n <= 4; ++n) {
    std::uint64_t regular = 0, transitive = 0;
    enumerate_essential_congruences(n, [&](const Congruence& c) {
      regular += is_regular(c);
      transitive += is_vertex_transitive(c);
    });
    CHECK(regular == count_regular(n));
    CHECK(transitive == count_vertex_transitive(n));
  }
}

TEST_CASE("one-sided simple reduced diagrams are counted by Catalan numbers") {
  // Direct enumeration of reduced diagrams whose arcs are all simple left
  // arcs (pairwise incomparable = non-nesting).
  for (int n = 2; n <= 7; ++n) {
    std::vector<Fence> left_arcs;
    for (int a = 1; a + 2 <= n; ++a)
      for (int b = a + 2; b <= n; ++b) left_arcs.push_back(make_fence(a, b));
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ull << left_arcs.size()); ++mask) {
      bool antichain = true;
      for (std::size_t i = 0; i < left_arcs.size() && antichain; ++i)
        for (std::size_t j = 0; j < left_arcs.size() && antichain; ++j)
          if (i != j && (mask >> i & 1) && (mask >> j & 1) &&
              forcing_less(left_arcs[i], left_arcs[j]))
            antichain = false;
      count += antichain;
    }
    CHECK(count == catalan(n - 1));
  }
}

TEST_CASE("non-isomorphic counts by canonical bucketing") {
  auto n2 = count_noniso(2);
  CHECK(n2.quotient_graphs == 1);
  CHECK(n2.regular == 1);
  auto n3 = count_noniso(3);
  CHECK(n3.quotient_graphs == 3);
  CHECK(n3.regular == 3);
  auto n4 = count_noniso(4);
  CHECK(n4.quotient_graphs == 19);
  CHECK(n4.regular == 10);
  CHECK(n4.vertex_transitive == 4);
}

TEST_CASE("chain bound") {
  for (int n = 3; n <= 6; ++n)
    CHECK(chain_bound_check(n) ==
          essential_fence_count(n) + 1);
}

TEST_CASE("cartesian factorization at loops (n = 4)") {
  enumerate_essential_congruences(4, [](const Congruence& c) {
    for (int s = 2; s <= 3; ++s) {
      if (!c.contains(make_fence(s - 1, s + 1)) ||
          !c.contains(make_fence(s - 1, s + 1, {s})))
        continue;
      // Split the diagram at the loop; the quotient graph is the Cartesian
      // product of the factors.
      std::vector<Fence> low, high;
      for (const Fence& f : c.fences()) {
        if (f.b <= s) low.push_back(f);
        if (f.a >= s) {
          std::vector<int> shifted;
          for (int v : f.left_values()) shifted.push_back(v - (s - 1));
          high.push_back(make_fence(f.a - (s - 1), f.b - (s - 1), shifted));
        }
      }
      auto left = graph_of(downset_closure(s, low));
      auto right = graph_of(downset_closure(4 - s + 1, high));
      CHECK(canonical_form(graph_of(c)) ==
            canonical_form(cartesian_product(left, right)));
    }
  });
}

TEST_CASE("bipartite probe") {
  auto probe = bipartite_probe(Congruence(3));
  CHECK(probe.graph_bipartite);
  CHECK(probe.conjecture_predicts);

  auto c5 = bipartite_probe(
      downset_closure(3, std::vector<Fence>{make_fence(1, 3, {2})}));
  CHECK_FALSE(c5.graph_bipartite);
  CHECK_FALSE(c5.conjecture_predicts);

  auto cube = bipartite_probe(hypercube(4));
  CHECK(cube.graph_bipartite);
  CHECK(cube.conjecture_predicts);

  // The conjecture has been verified computationally for small n; check the
  // two sides agree on all essential congruences for n <= 4.
  enumerate_essential_congruences(4, [](const Congruence& c) {
    auto p = bipartite_probe(c);
    CHECK(p.graph_bipartite == p.conjecture_predicts);
  });
}

TEST_CASE("hamilton cycle search") {
  auto cycle6 = hamilton_cycle(graph_of(Congruence(3)));
  CHECK(cycle6.decided);
  CHECK(cycle6.cycle.size() == 6);
  // Cycles exist in every essential quotient graph for n = 3, 4.
  for (int n = 3; n <= 4; ++n)
    enumerate_essential_congruences(n, [](const Congruence& c) {
      auto g = graph_of(c);
      auto result = hamilton_cycle(g);
      CHECK(result.decided);
      CHECK(result.cycle.size() == static_cast<std::size_t>(g.node_count));
      // Verify the cycle.
      for (std::size_t i = 0; i < result.cycle.size(); ++i)
        CHECK(g.adjacent(result.cycle[i],
                         result.cycle[(i + 1) % result.cycle.size()]));
    });
}

TEST_CASE("max degree over all congruences is 2n - ceil(2 sqrt n), n <= 4") {
  for (int n = 2; n <= 4; ++n) {
    int best = 0;
    enumerate_all_congruences(n, [&](const Congruence& c) {
      best = std::max(best, max_degree(graph_of(c)));
    });
    CHECK(best == max_degree_bound(n));
  }
}
