#include "qtope/genj.hpp"

#include <algorithm>

namespace qtope {

void ZigzagLanguage::index_and_verify() {
  codes_.resize(n_ + 1);
  for (int k = 0; k <= n_; ++k) {
    std::sort(levels_[k].begin(), levels_[k].end());
    levels_[k].erase(std::unique(levels_[k].begin(), levels_[k].end()),
                     levels_[k].end());
    codes_[k].clear();
    for (const Permutation& p : levels_[k]) codes_[k].insert(p.code());
  }
  if (levels_[0] != std::vector<Permutation>{Permutation()})
    throw InvalidInputError("zigzag language: L_0 must be {eps}");
  for (int k = 1; k <= n_; ++k) {
    // The lower level must be exactly the projections.
    std::unordered_set<std::uint64_t> proj;
    for (const Permutation& p : levels_[k]) {
      if (p.size() != k)
        throw InvalidInputError("zigzag language: member with wrong length");
      proj.insert(remove_largest(p).code());
    }
    if (proj != codes_[k - 1])
      throw InvalidInputError(
          "zigzag language: level is not the projection of the level above");
    bool z1 = true;
    for (const Permutation& p : levels_[k - 1])
      if (!contains(k, insert_largest(p, 1)) ||
          !contains(k, insert_largest(p, k)))
        z1 = false;
    bool z2 = levels_[k].size() == levels_[k - 1].size() &&
              std::all_of(levels_[k].begin(), levels_[k].end(),
                          [&](const Permutation& p) { return p.at(k) == k; });
    ZigzagMode want = modes_.empty() ? ZigzagMode::kZ1 : modes_[k];
    if (!modes_.empty()) {
      if ((want == ZigzagMode::kZ1 && !z1) || (want == ZigzagMode::kZ2 && !z2))
        throw VerificationError("zigzag condition does not hold at a level");
    } else if (!z1 && !z2) {
      throw InvalidInputError("not a zigzag language: neither (z1) nor (z2)");
    }
  }
  if (modes_.empty()) {
    modes_.assign(n_ + 1, ZigzagMode::kZ1);
    for (int k = 1; k <= n_; ++k) {
      bool z1 = true;
      for (const Permutation& p : levels_[k - 1])
        if (!contains(k, insert_largest(p, 1)) ||
            !contains(k, insert_largest(p, k)))
          z1 = false;
      modes_[k] = z1 ? ZigzagMode::kZ1 : ZigzagMode::kZ2;
    }
  }
}

ZigzagLanguage ZigzagLanguage::from_members(int n,
                                            std::vector<Permutation> members) {
  ZigzagLanguage lang;
  lang.n_ = n;
  lang.levels_.resize(n + 1);
  lang.levels_[n] = std::move(members);
  for (int k = n; k >= 1; --k) {
    std::vector<Permutation> below;
    for (const Permutation& p : lang.levels_[k])
      below.push_back(remove_largest(p));
    std::sort(below.begin(), below.end());
    below.erase(std::unique(below.begin(), below.end()), below.end());
    lang.levels_[k - 1] = std::move(below);
  }
  lang.index_and_verify();
  return lang;
}

ZigzagLanguage ZigzagLanguage::trivial() {
  return from_members(0, {Permutation()});
}

ZigzagLanguage ZigzagLanguage::from_chain(
    std::vector<std::vector<Permutation>> levels,
    std::vector<ZigzagMode> modes) {
  ZigzagLanguage lang;
  lang.n_ = static_cast<int>(levels.size()) - 1;
  lang.levels_ = std::move(levels);
  lang.modes_ = std::move(modes);
  lang.index_and_verify();
  return lang;
}

RepSet build_representatives(const Congruence& c) {
  return build_representatives(c, compute_classes(c, /*with_members=*/false));
}

RepSet build_representatives(const Congruence& c, const ClassPartition& part) {
  int n = c.n();
  std::vector<Congruence> restricted;  // restricted[k] acts on S_k
  restricted.reserve(n + 1);
  restricted.push_back(c);
  for (int k = n; k >= 1; --k)
    restricted.push_back(restricted.back().restriction());
  std::reverse(restricted.begin(), restricted.end());

  std::vector<std::vector<Permutation>> levels(n + 1);
  std::vector<ZigzagMode> modes(n + 1, ZigzagMode::kZ1);
  levels[0] = {Permutation()};
  for (int k = 1; k <= n; ++k) {
    bool collapsed =
        k >= 2 && restricted[k].contains(make_fence(k - 1, k));
    if (collapsed) {
      modes[k] = ZigzagMode::kZ2;
      for (const Permutation& p : levels[k - 1])
        levels[k].push_back(insert_largest(p, k));
    } else {
      modes[k] = ZigzagMode::kZ1;
      for (const Permutation& p : levels[k - 1]) {
        for (const RailSegment& seg : rail_segments(restricted[k], p)) {
          // c_1 and c_k are mandatory; free segments take the lex-smallest
          // member, which is the highest insertion position.
          int pick = seg.first == k ? k : (seg.last == 1 ? 1 : seg.first);
          levels[k].push_back(insert_largest(p, pick));
        }
      }
    }
  }

  RepSet reps;
  reps.language = ZigzagLanguage::from_chain(std::move(levels), std::move(modes));

  // Exactly one representative per class.
  reps.class_rep.assign(part.classes.size(), Permutation());
  std::vector<std::uint8_t> seen(part.classes.size(), 0);
  for (const Permutation& p : reps.language.members()) {
    int id = part.class_id_of(p);
    if (seen[id])
      throw VerificationError("two representatives in one class");
    seen[id] = 1;
    reps.class_rep[id] = p;
  }
  if (reps.language.members().size() != part.classes.size())
    throw VerificationError("representative count differs from class count");
  return reps;
}

namespace {

// Minimal jump of `value` in `p` w.r.t. the language: the shortest jump in
// the given direction landing in the language. Structural failure of a short
// jump blocks all longer ones.
std::optional<Permutation> minimal_jump(
    const std::unordered_set<std::uint64_t>& lang, const Permutation& p,
    int value, JumpDirection dir) {
  for (int steps = 1;; ++steps) {
    std::optional<Permutation> q = jump(p, value, dir, steps);
    if (!q) return std::nullopt;
    if (lang.count(q->code())) return q;
  }
}

}  // namespace

std::vector<Permutation> algorithm_j(const std::vector<Permutation>& language,
                                     const Permutation& start) {
  std::unordered_set<std::uint64_t> lang;
  for (const Permutation& p : language) lang.insert(p.code());
  if (!lang.count(start.code()))
    throw InvalidInputError("algorithm_j: start is not in the language");

  int n = start.size();
  std::unordered_set<std::uint64_t> visited{start.code()};
  std::vector<Permutation> out{start};
  Permutation cur = start;
  for (;;) {
    std::optional<Permutation> chosen;
    bool ambiguous = false;
    for (int value = n; value >= 2; --value) {
      auto left = minimal_jump(lang, cur, value, JumpDirection::kLeft);
      auto right = minimal_jump(lang, cur, value, JumpDirection::kRight);
      bool left_new = left && !visited.count(left->code());
      bool right_new = right && !visited.count(right->code());
      if (left_new && right_new) {
        ambiguous = true;
        break;
      }
      if (left_new || right_new) {
        chosen = left_new ? *left : *right;
        break;
      }
    }
    if (ambiguous || !chosen) break;
    cur = *chosen;
    visited.insert(cur.code());
    out.push_back(cur);
  }
  return out;
}

std::vector<Permutation> jump_sequence(const ZigzagLanguage& lang) {
  std::vector<Permutation> seq{Permutation()};
  for (int k = 1; k <= lang.n(); ++k) {
    std::vector<Permutation> next;
    if (lang.mode(k) == ZigzagMode::kZ2) {
      for (const Permutation& p : seq) next.push_back(insert_largest(p, k));
    } else {
      bool descending = true;  // start with c(pi_1) from position k down to 1
      for (const Permutation& p : seq) {
        if (descending) {
          for (int i = k; i >= 1; --i) {
            Permutation q = insert_largest(p, i);
            if (lang.contains(k, q)) next.push_back(q);
          }
        } else {
          for (int i = 1; i <= k; ++i) {
            Permutation q = insert_largest(p, i);
            if (lang.contains(k, q)) next.push_back(q);
          }
        }
        descending = !descending;
      }
    }
    seq = std::move(next);
  }
  return seq;
}

HamiltonPathResult hamilton_path(const Congruence& c) {
  ClassPartition part = compute_classes(c, /*with_members=*/false);
  QuotientGraph g = build_quotient_graph(part);
  return hamilton_path(c, part, g);
}

HamiltonPathResult hamilton_path(const Congruence& c,
                                 const ClassPartition& part,
                                 const QuotientGraph& g) {
  RepSet reps = build_representatives(c, part);
  std::vector<Permutation> seq =
      algorithm_j(reps.language.members(), Permutation::identity(c.n()));

  HamiltonPathResult result;
  result.representatives = seq;
  std::vector<std::uint8_t> visited(part.classes.size(), 0);
  for (const Permutation& p : seq) {
    int id = part.class_id_of(p);
    if (visited[id])
      throw VerificationError("hamilton_path: class visited twice");
    visited[id] = 1;
    result.class_ids.push_back(id);
  }
  if (result.class_ids.size() != part.classes.size())
    throw VerificationError("hamilton_path: not all classes visited");
  for (std::size_t i = 0; i + 1 < result.class_ids.size(); ++i)
    if (!g.adjacent(result.class_ids[i], result.class_ids[i + 1]))
      throw VerificationError(
          "hamilton_path: consecutive classes are not adjacent in the "
          "quotient");
  return result;
}

CyclicOrderReport is_cyclic_order(const Congruence& c) {
  if (c.n() > 8) throw BudgetError("is_cyclic_order: n <= 8");
  ClassPartition part = compute_classes(c, /*with_members=*/false);
  QuotientGraph g = build_quotient_graph(part);
  RepSet reps = build_representatives(c, part);

  CyclicOrderReport report;
  report.parity_condition = true;
  for (int k = 2; k <= c.n() - 1; ++k)
    if (reps.language.level(k).size() % 2 != 0) report.parity_condition = false;

  HamiltonPathResult path = hamilton_path(c, part, g);
  report.actually_cyclic =
      path.class_ids.size() >= 3 &&
      g.adjacent(path.class_ids.front(), path.class_ids.back());
  return report;
}

bool is_single_jump(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size() || p == q) return false;
  int n = p.size();
  for (int value = 2; value <= n; ++value)
    for (auto dir : {JumpDirection::kLeft, JumpDirection::kRight})
      for (int steps = 1; steps < n; ++steps) {
        auto r = jump(p, value, dir, steps);
        if (!r) break;
        if (*r == q) return true;
      }
  return false;
}

}  // namespace qtope
