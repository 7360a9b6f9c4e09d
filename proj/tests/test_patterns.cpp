#include <set>

#include "doctest.h"
#include "qtope/classes.hpp"
#include "qtope/genj.hpp"
#include "qtope/patterns.hpp"
#include "test_support.hpp"

using namespace qtope;
using namespace qtope::testing;

namespace {

// Independent fence oracle: a fence belongs to the congruence of P iff one
// of its edges is a rewriting edge, i.e. the upper endpoint matches some
// pattern with the glued pair exactly on the transposed descent.
bool edge_rewrites(const WellBehavedSet& set, const Permutation& upper,
                   int pos) {
  for (const Pattern& t : set.patterns()) {
    int k = t.length();
    // Choose positions for the pattern: glued pair fixed at (pos, pos+1).
    std::vector<int> slots(k, 0);
    std::function<bool(int)> place = [&](int slot) -> bool {
      if (slot == k) return true;
      if (slot == t.vincular - 1) {
        slots[slot] = pos;
        slots[slot + 1] = pos + 1;
        bool ok = true;
        for (int l = 0; l < slot && ok; ++l) {
          if (slots[l] >= pos) ok = false;
          if (ok &&
              (t.entries[l] < t.entries[slot]) !=
                  (upper.at(slots[l]) < upper.at(pos)))
            ok = false;
          if (ok &&
              (t.entries[l] < t.entries[slot + 1]) !=
                  (upper.at(slots[l]) < upper.at(pos + 1)))
            ok = false;
        }
        return ok && place(slot + 2);
      }
      int from = slot == 0 ? 1 : slots[slot - 1] + 1;
      for (int i = from; i <= upper.size(); ++i) {
        if (i == pos || i == pos + 1) continue;
        bool ok = true;
        for (int l = 0; l < slot && ok; ++l)
          if ((t.entries[l] < t.entries[slot]) !=
              (upper.at(slots[l]) < upper.at(i)))
            ok = false;
        if (!ok) continue;
        slots[slot] = i;
        if (place(slot + 1)) return true;
      }
      return false;
    };
    if (place(0)) return true;
  }
  return false;
}

std::set<Fence> brute_force_fences(const WellBehavedSet& set, int n) {
  std::set<Fence> out;
  for (const Permutation& p : all_permutations(n))
    for (int i = 1; i < n; ++i)
      if (!p.ascent_at(i) && edge_rewrites(set, p, i))
        out.insert(edge_fence(p, p.swapped(i)));
  return out;
}

}  // namespace

TEST_CASE("pattern parsing and printing") {
  Pattern p = parse_pattern("2[31]");
  CHECK(p.entries == std::vector<int>{2, 3, 1});
  CHECK(p.vincular == 2);
  CHECK(to_string(p) == "2[31]");
  CHECK(parse_pattern("231").vincular == 0);
  CHECK(to_string(parse_pattern("24[51]3")) == "24[51]3");
  CHECK(parse_patterns("2[41]3,3[41]2").size() == 2);
  CHECK_THROWS_AS(parse_pattern("2[314]"), InvalidInputError);
  CHECK_THROWS_AS(parse_pattern("2[3"), InvalidInputError);
  CHECK_THROWS_AS(parse_pattern("221"), InvalidInputError);
}

TEST_CASE("containment worked examples") {
  CHECK(contains(parse_permutation("635412"), parse_pattern("231")));
  CHECK_FALSE(contains(parse_permutation("654123"), parse_pattern("231")));
  CHECK(contains(parse_permutation("3142"), parse_pattern("231")));
  CHECK_FALSE(contains(parse_permutation("3142"), parse_pattern("[23]1")));
}

TEST_CASE("containment against a brute-force subsequence scan") {
  std::vector<Pattern> patterns{parse_pattern("231"), parse_pattern("2[31]"),
                                parse_pattern("[23]1"), parse_pattern("3[41]2"),
                                parse_pattern("1[32]")};
  for (const Permutation& p : all_permutations(5)) {
    for (const Pattern& t : patterns) {
      // Oracle: scan all index subsets.
      int n = p.size(), k = t.length();
      bool expect = false;
      std::vector<int> idx(k);
      std::function<void(int, int)> scan = [&](int slot, int from) {
        if (expect) return;
        if (slot == k) {
          if (t.vincular && idx[t.vincular] != idx[t.vincular - 1] + 1) return;
          for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
              if ((t.entries[a] < t.entries[b]) !=
                  (p.at(idx[a]) < p.at(idx[b])))
                return;
          expect = true;
          return;
        }
        for (int i = from; i <= n; ++i) {
          idx[slot] = i;
          scan(slot + 1, i + 1);
        }
      };
      scan(0, 1);
      CHECK(contains(p, t) == expect);
    }
  }
}

TEST_CASE("tameness worked examples") {
  CHECK(is_tame(parse_pattern("132")));
  CHECK_FALSE(is_tame(parse_pattern("123")));
  CHECK(is_tame(parse_pattern("3[41]2")));
  CHECK_FALSE(is_tame(parse_pattern("[12]43")));
  CHECK_FALSE(is_tame(parse_pattern("[41]23")));
  CHECK(is_tame(parse_pattern("2[31]")));
  CHECK(is_tame(parse_pattern("[13]2")));
}

TEST_CASE("avoidance sets") {
  CHECK(avoid_set(4, std::vector<Pattern>{parse_pattern("231")}).size() == 14);
  CHECK(avoid_set(4, {}).size() == 24);
  CHECK(avoid_set(4, parse_patterns("2[41]3,3[41]2")).size() == 22);
}

TEST_CASE("tame patterns are generated by the greedy algorithm") {
  // All length-3 tame patterns, classical and vincular.
  std::vector<Pattern> tame{parse_pattern("132"),   parse_pattern("231"),
                            parse_pattern("1[32]"), parse_pattern("[13]2"),
                            parse_pattern("2[31]"), parse_pattern("[23]1")};
  for (const Pattern& t : tame) {
    REQUIRE(is_tame(t));
    for (int n = 2; n <= 5; ++n) {
      auto lang = avoid_set(n, {&t, 1});
      auto visited = algorithm_j(lang, Permutation::identity(n));
      CHECK(visited.size() == lang.size());
      CHECK(std::set<Permutation>(visited.begin(), visited.end()) ==
            std::set<Permutation>(lang.begin(), lang.end()));
    }
  }
}

TEST_CASE("well-behaved validation and closure") {
  WellBehavedSet p1({parse_pattern("2[31]")});
  CHECK(p1.input_was_closed());
  CHECK(p1.patterns().size() == 1);

  // 24[51]3 closes under permuting A = (2,4).
  WellBehavedSet p3({parse_pattern("24[51]3")});
  CHECK_FALSE(p3.input_was_closed());
  CHECK(p3.patterns().size() == 2);
  CHECK(p3.patterns() == std::vector<Pattern>{parse_pattern("24[51]3"),
                                              parse_pattern("42[51]3")});

  CHECK_THROWS_AS(WellBehavedSet({parse_pattern("231")}), NotWellBehavedError);
  CHECK_THROWS_AS(WellBehavedSet({parse_pattern("[23]1")}),
                  NotWellBehavedError);
  CHECK_THROWS_AS(WellBehavedSet({parse_pattern("2[13]")}),
                  NotWellBehavedError);
}

TEST_CASE("pattern congruences: worked examples") {
  WellBehavedSet sylvester({parse_pattern("2[31]")});
  CHECK(congruence_from_patterns(sylvester, 3).fences() ==
        std::vector<Fence>{make_fence(1, 3, {2})});

  auto tam4 = congruence_from_patterns(sylvester, 4);
  auto part = compute_classes(tam4);
  CHECK(part.classes.size() == 14);
  auto avoiders = avoid_set(4, std::vector<Pattern>{parse_pattern("231")});
  for (const EquivalenceClass& cls : part.classes)
    CHECK_FALSE(contains(cls.min, parse_pattern("231")));
  CHECK(avoiders.size() == part.classes.size());

  WellBehavedSet twisted(parse_patterns("2[41]3,3[41]2"));
  auto rect4 = congruence_from_patterns(twisted, 4);
  CHECK(compute_classes(rect4).classes.size() == 22);
}

TEST_CASE("pattern congruence fences match the brute-force edge scan") {
  std::vector<WellBehavedSet> sets{
      WellBehavedSet({parse_pattern("2[31]")}),
      WellBehavedSet({parse_pattern("[21]")}),
      WellBehavedSet(parse_patterns("2[41]3,3[41]2")),
      WellBehavedSet({parse_pattern("2[41]3")}),
      WellBehavedSet({parse_pattern("3[41]2")}),
      WellBehavedSet(parse_patterns("3[51]24,24[51]3")),
      WellBehavedSet({parse_pattern("23[41]")})};
  for (const WellBehavedSet& set : sets)
    for (int n = 2; n <= 5; ++n) {
      auto fences = congruence_from_patterns(set, n).fences();
      CHECK(std::set<Fence>(fences.begin(), fences.end()) ==
            brute_force_fences(set, n));
    }
}

TEST_CASE("class minima are exactly the avoiders") {
  std::vector<std::pair<WellBehavedSet, std::vector<Pattern>>> cases;
  cases.emplace_back(WellBehavedSet({parse_pattern("2[31]")}),
                     std::vector<Pattern>{parse_pattern("2[31]")});
  cases.emplace_back(WellBehavedSet(parse_patterns("2[41]3,3[41]2")),
                     parse_patterns("2[41]3,3[41]2"));
  for (const auto& [set, patterns] : cases)
    for (int n = 2; n <= 5; ++n) {
      auto part = compute_classes(congruence_from_patterns(set, n));
      std::set<Permutation> minima;
      for (const EquivalenceClass& cls : part.classes)
        minima.insert(cls.min);
      auto avoiders = avoid_set(n, patterns);
      CHECK(minima == std::set<Permutation>(avoiders.begin(), avoiders.end()));
    }
}

TEST_CASE("rewriting walks down to the class minimum") {
  WellBehavedSet sylvester({parse_pattern("2[31]")});
  auto c = congruence_from_patterns(sylvester, 5);
  auto part = compute_classes(c);
  for (const Permutation& p : all_permutations(5)) {
    Permutation cur = p;
    int guard = 0;
    for (;;) {
      auto next = rewrite_step(sylvester, cur);
      if (!next) break;
      CHECK(inversion_set(*next).count() < inversion_set(cur).count());
      CHECK(part.class_id_of(*next) == part.class_id_of(p));
      cur = *next;
      REQUIRE(++guard < 100);
    }
    CHECK(cur == part.classes[part.class_id_of(p)].min);
  }
}
