#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qtope/classes.hpp"
#include "qtope/counting.hpp"
#include "qtope/fence.hpp"

namespace qtope {

/// Underlying undirected graph of the cover graph of S_n/≡: one node per
/// equivalence class, one edge per contracted pair of adjacent classes.
/// Edge labels are the transposed value pair (a,b) read off the ascent of
/// max(X) that reaches the upper class.
struct QuotientGraph {
  struct Edge {
    int u = 0, v = 0;  // u < v
    int label_a = 0, label_b = 0;
  };

  int n = 0;
  int node_count = 0;
  std::vector<Edge> edges;             // sorted by (u, v)
  std::vector<std::vector<int>> adj;   // sorted neighbor lists
  std::vector<int> degree;

  bool adjacent(int x, int y) const;
};

QuotientGraph build_quotient_graph(const ClassPartition& part);

// desc(min(X)) + asc(max(X)); equals the graph degree of X.
int class_degree(const ClassPartition& part, int class_id);

int min_degree(const QuotientGraph& g);
int max_degree(const QuotientGraph& g);
bool is_regular_graph(const QuotientGraph& g);
bool is_connected(const QuotientGraph& g);
bool is_bipartite_graph(const QuotientGraph& g);

// Route A of the regularity characterization: every arc of the reduced
// diagram is simple. Requires an essential congruence.
bool is_regular(const Congruence& c);

// Route A of the vertex-transitivity characterization: after splitting the
// reduced diagram at loops, every factor is an empty diagram or a 3-point
// diagram with one short one-sided arc. Requires an essential congruence.
bool is_vertex_transitive(const Congruence& c);

// Oracle route: the automorphism group acts transitively on vertices.
// Backed by rooted canonical labelings; graphs up to 128 nodes.
bool is_vertex_transitive_graph(const QuotientGraph& g);

// Canonical adjacency encoding, invariant under relabeling (<= 128 nodes).
using CanonicalForm = std::vector<std::uint64_t>;
CanonicalForm canonical_form(const QuotientGraph& g);
CanonicalForm rooted_canonical_form(const QuotientGraph& g, int root);

// |R_n| = C_{n-1}^2.
std::uint64_t count_regular(int n);
// |V_n| = sum_k 3^k c_{n-1,k} over compositions of n-1 with k twos.
std::uint64_t count_vertex_transitive(int n);
// |V'_n| = t_{n+1}.
std::uint64_t count_vt_noniso(int n);

struct NonIsoCounts {
  std::uint64_t quotient_graphs = 0;    // |Q'_n|
  std::uint64_t regular = 0;            // |R'_n|
  std::uint64_t vertex_transitive = 0;  // |V'_n|
};
// Canonical-form bucketing of all essential quotient graphs. n <= 5.
NonIsoCounts count_noniso(int n);

// Builds a maximal chain of essential congruences (one fence added per step
// in a linear extension) and checks the class counts strictly decrease from
// n! to 2^(n-1). Returns the chain length 2^n - 2n + 1, a lower bound for
// |Q'_n|. n <= 8.
std::uint64_t chain_bound_check(int n);

/// Table-filling construction achieving the maximum degree 2n - ceil(2*sqrt(n)).
/// The class is certified through its min/max only (no n! enumeration), so it
/// works for all n <= 12; class_id is filled on request for n <= 9.
struct MaxDegreeWitness {
  Congruence congruence{0};
  Permutation class_min;
  Permutation class_max;
  int degree = 0;
  std::optional<int> class_id;
};
MaxDegreeWitness max_degree_witness(int n, bool with_class_id = false);

int max_degree_bound(int n);  // 2n - ceil(2*sqrt(n))

struct BipartiteProbe {
  bool graph_bipartite = false;
  bool conjecture_predicts = false;
};
// Graph 2-coloring vs. the open conjecture (diagram = union of complete arc
// sets A(a_i,b_i) over non-nesting intervals). Reports both, asserts nothing.
BipartiteProbe bipartite_probe(const Congruence& c);
BipartiteProbe bipartite_probe(const Congruence& c, const QuotientGraph& g);

// Hamilton cycle search: rotation-extension from a seed Hamilton path when
// one is supplied, then plain backtracking under a node budget.
struct HamiltonCycleResult {
  bool decided = false;    // false = budget ran out without an answer
  std::vector<int> cycle;  // non-empty iff a cycle was found
};
HamiltonCycleResult hamilton_cycle(const QuotientGraph& g,
                                   std::uint64_t node_budget = 50'000'000);
HamiltonCycleResult hamilton_cycle(const QuotientGraph& g,
                                   const std::vector<int>& seed_path,
                                   std::uint64_t node_budget = 50'000'000);

QuotientGraph cartesian_product(const QuotientGraph& g,
                                const QuotientGraph& h);

}  // namespace qtope
