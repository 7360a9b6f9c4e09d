#include <set>

#include "doctest.h"
#include "qtope/classes.hpp"
#include "test_support.hpp"

using namespace qtope;
using namespace qtope::testing;

namespace {

Congruence tamari(int n) {
  // All fences with a non-empty left set form the downset of the sylvester
  // congruence.
  std::vector<Fence> gens;
  const FenceTable& table = fence_table(n);
  for (int i = 0; i < table.size(); ++i)
    if (table.fence(i).left != 0) gens.push_back(table.fence(i));
  Congruence c = downset_closure(n, gens);
  REQUIRE(c.size() == static_cast<int>(gens.size()));
  return c;
}

}  // namespace

TEST_CASE("class computation worked examples") {
  CHECK(compute_classes(Congruence(3)).classes.size() == 6);

  std::vector<Fence> all3;
  for (int i = 0; i < fence_table(3).size(); ++i)
    all3.push_back(fence_table(3).fence(i));
  auto one = compute_classes(downset_closure(3, all3));
  CHECK(one.classes.size() == 1);
  CHECK(one.classes[0].size == 6);
  CHECK(one.classes[0].min == Permutation{1, 2, 3});
  CHECK(one.classes[0].max == Permutation{3, 2, 1});

  auto c5 = compute_classes(
      downset_closure(3, std::vector<Fence>{make_fence(1, 3, {2})}));
  CHECK(c5.classes.size() == 5);
}

TEST_CASE("class ids follow the lex order of the minima") {
  auto part = compute_classes(tamari(4));
  CHECK(part.classes.size() == 14);
  for (std::size_t i = 0; i + 1 < part.classes.size(); ++i)
    CHECK(part.classes[i].min < part.classes[i + 1].min);
  for (const EquivalenceClass& cls : part.classes)
    CHECK(part.class_id_of(cls.min) == cls.id);
}

TEST_CASE("classes are weak-order intervals (convexity, n <= 5)") {
  auto check_intervals = [](const Congruence& c) {
    auto part = compute_classes(c);
    std::uint64_t total = 0;
    for (const EquivalenceClass& cls : part.classes) {
      total += cls.size;
      CHECK(weak_leq(cls.min, cls.max));
      std::uint64_t interval = 0;
      for (const Permutation& p : all_permutations(c.n()))
        if (weak_leq(cls.min, p) && weak_leq(p, cls.max)) {
          ++interval;
          CHECK(part.class_id_of(p) == cls.id);
        }
      CHECK(interval == cls.size);
      for (std::uint32_t r : cls.members) {
        Permutation m = Permutation::from_lex_rank(c.n(), r);
        CHECK(weak_leq(cls.min, m));
        CHECK(weak_leq(m, cls.max));
      }
    }
    CHECK(total == factorial(c.n()));
  };
  enumerate_essential_congruences(4, check_intervals);
  check_intervals(tamari(5));
  check_intervals(downset_closure(
      5, std::vector<Fence>{make_fence(2, 3), make_fence(1, 5, {3})}));
}

TEST_CASE("projection of a class is a class of the restriction") {
  // The Tamari class {2134, 2314, 2341} projects onto the Tamari class
  // {213, 231}.
  auto part4 = compute_classes(tamari(4));
  int id = part4.class_id_of(parse_permutation("2134"));
  CHECK(part4.classes[id].size == 3);
  CHECK(part4.class_id_of(parse_permutation("2314")) == id);
  CHECK(part4.class_id_of(parse_permutation("2341")) == id);
  auto proj = class_projection(part4, id);
  CHECK(proj == std::vector<Permutation>{parse_permutation("213"),
                                         parse_permutation("231")});
  auto part3 = compute_classes(tamari(4).restriction());
  int id3 = part3.class_id_of(parse_permutation("213"));
  CHECK(part3.classes[id3].size == 2);

  CHECK(class_projection(compute_classes(Congruence(3)),
                         compute_classes(Congruence(3))
                             .class_id_of(parse_permutation("123"))) ==
        std::vector<Permutation>{parse_permutation("12")});
}

TEST_CASE("projection lemma: images are classes, equal or disjoint, min/max "
          "project to min/max") {
  auto check = [](const Congruence& c) {
    auto part = compute_classes(c);
    auto restricted = compute_classes(c.restriction());
    std::set<int> seen_targets;
    for (const EquivalenceClass& cls : part.classes) {
      auto proj = class_projection(part, cls.id);
      int target = restricted.class_id_of(proj.front());
      const EquivalenceClass& tcls = restricted.classes[target];
      // The image is exactly one class of the restriction.
      CHECK(proj.size() == tcls.size);
      for (const Permutation& p : proj)
        CHECK(restricted.class_id_of(p) == target);
      // Lemma on minima/maxima of projections.
      CHECK(remove_largest(cls.min) == tcls.min);
      CHECK(remove_largest(cls.max) == tcls.max);
      seen_targets.insert(target);
    }
    CHECK(seen_targets.size() == restricted.classes.size());
  };
  enumerate_essential_congruences(4, check);
  check(tamari(5));
}

TEST_CASE("rail segments worked examples") {
  // Finest congruence: all singleton segments.
  auto segs = rail_segments(Congruence(4), parse_permutation("213"));
  CHECK(segs == std::vector<RailSegment>{{4, 4}, {3, 3}, {2, 2}, {1, 1}});

  // Tamari at n=4, rail of q = 213: the bar tests along the rail use
  // f(3,4,{}), f(1,4,{2}), f(2,4,{}) of which only f(1,4,{2}) is sylvester.
  auto segs2 = rail_segments(tamari(4), parse_permutation("213"));
  CHECK(segs2 == std::vector<RailSegment>{{4, 4}, {3, 2}, {1, 1}});
  // First and last rail permutations lie in distinct classes.
  auto part = compute_classes(tamari(4));
  CHECK(part.class_id_of(insert_largest(parse_permutation("213"), 4)) !=
        part.class_id_of(insert_largest(parse_permutation("213"), 1)));

  // For the identity rail, the segment of c_n is a singleton iff
  // f(n-1,n,{}) is absent.
  for (int n = 2; n <= 6; ++n) {
    auto tam_segs = rail_segments(tamari(n), Permutation::identity(n - 1));
    CHECK(tam_segs.front() == RailSegment{n, n});
  }
}

TEST_CASE("rail segments agree with the class partition") {
  enumerate_essential_congruences(4, [](const Congruence& c) {
    auto part = compute_classes(c);
    for (const Permutation& q : all_permutations(3)) {
      auto segs = rail_segments(c, q);
      // Segments tile positions n..1.
      int expect_first = 4;
      std::set<int> seg_classes;
      for (const RailSegment& seg : segs) {
        CHECK(seg.first == expect_first);
        CHECK(seg.last <= seg.first);
        expect_first = seg.last - 1;
        int cls = part.class_id_of(insert_largest(q, seg.first));
        for (int i = seg.last; i <= seg.first; ++i)
          CHECK(part.class_id_of(insert_largest(q, i)) == cls);
        CHECK(seg_classes.insert(cls).second);  // interval property on rails
      }
      CHECK(expect_first == 0);
    }
  });
}

TEST_CASE("rail collapse trichotomy") {
  // For every congruence at n <= 4: f(n-1,n,{}) contracted iff one rail is
  // all bars iff all rails are all bars.
  for (int n = 3; n <= 4; ++n) {
    enumerate_all_congruences(n, [n](const Congruence& c) {
      bool has_collapse_fence = c.contains(make_fence(n - 1, n));
      int rails_all_bars = 0, rails_total = 0;
      for (const Permutation& q : all_permutations(n - 1)) {
        ++rails_total;
        bool all_bars = true;
        for (int i = 1; i < n; ++i)
          if (!c.is_bar(insert_largest(q, i), insert_largest(q, i + 1)))
            all_bars = false;
        rails_all_bars += all_bars;
      }
      if (has_collapse_fence) {
        CHECK(rails_all_bars == rails_total);
        CHECK_THROWS_AS(rail_segments(c, Permutation::identity(n - 1)),
                        RailCollapseError);
      } else {
        CHECK(rails_all_bars == 0);
      }
    });
  }
}

TEST_CASE("count_classes matches compute_classes") {
  enumerate_essential_congruences(4, [](const Congruence& c) {
    CHECK(count_classes(c) == compute_classes(c, false).classes.size());
  });
  CHECK(count_classes(Congruence(6)) == factorial(6));
}

TEST_CASE("budget checks") {
  CHECK_THROWS_AS(compute_classes(Congruence(10)), BudgetError);
}
