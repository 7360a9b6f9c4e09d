#include "qtope/patterns.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qtope {

Pattern parse_pattern(std::string_view text) {
  Pattern t;
  int glue_open = -1;
  for (char ch : text) {
    if (ch == '[') {
      if (t.vincular != 0 || glue_open != -1)
        throw InvalidInputError("pattern may contain at most one glued pair");
      glue_open = static_cast<int>(t.entries.size()) + 1;
    } else if (ch == ']') {
      if (glue_open == -1 ||
          static_cast<int>(t.entries.size()) != glue_open + 1)
        throw InvalidInputError("glued pair must contain exactly two entries");
      t.vincular = glue_open;
      glue_open = -1;
    } else if (ch >= '1' && ch <= '9') {
      t.entries.push_back(ch - '0');
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw InvalidInputError(std::string("unexpected character in pattern: ") +
                              ch);
    }
  }
  if (glue_open != -1) throw InvalidInputError("unterminated glued pair");
  Permutation check{std::span<const int>(t.entries)};  // validates bijection
  (void)check;
  return t;
}

std::vector<Pattern> parse_patterns(std::string_view text) {
  std::vector<Pattern> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view token = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    if (!token.empty()) out.push_back(parse_pattern(token));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string to_string(const Pattern& t) {
  std::string out;
  for (int i = 1; i <= t.length(); ++i) {
    if (i == t.vincular) out += '[';
    out += static_cast<char>('0' + t.entries[i - 1]);
    if (t.vincular && i == t.vincular + 1) out += ']';
  }
  return out;
}

namespace {

// Backtracking occurrence search; calls `found` with the matched positions
// (1-based, increasing). Returns true when the search was stopped early.
bool match_pattern(const Permutation& p, const Pattern& t,
                   const std::function<bool(const std::vector<int>&)>& found) {
  int n = p.size();
  int k = t.length();
  if (k > n) return false;
  std::vector<int> pos(k, 0);
  std::function<bool(int, int)> step = [&](int slot, int from) -> bool {
    if (slot == k) return found(pos);
    for (int i = from; i <= n - (k - slot - 1); ++i) {
      if (slot > 0 && t.vincular == slot && i != pos[slot - 1] + 1) {
        if (i > pos[slot - 1] + 1) return false;
        continue;
      }
      bool ok = true;
      for (int l = 0; l < slot && ok; ++l)
        if ((t.entries[l] < t.entries[slot]) != (p.at(pos[l]) < p.at(i)))
          ok = false;
      if (!ok) continue;
      pos[slot] = i;
      if (step(slot + 1, i + 1)) return true;
    }
    return false;
  };
  return step(0, 1);
}

}  // namespace

bool contains(const Permutation& p, const Pattern& t) {
  return match_pattern(p, t, [](const std::vector<int>&) { return true; });
}

bool is_tame(const Pattern& t) {
  int k = t.length();
  if (k == 0) return false;
  int pos_k = 1;
  while (t.entries[pos_k - 1] != k) ++pos_k;
  if (pos_k == 1 || pos_k == k) return false;
  if (t.vincular == 0) return true;
  return pos_k == t.vincular || pos_k == t.vincular + 1;
}

std::vector<Permutation> avoid_set(int n, std::span<const Pattern> patterns) {
  if (n > 10) throw BudgetError("avoid_set enumerates S_n: n <= 10");
  std::vector<Permutation> out;
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  do {
    Permutation p{std::span<const int>(e)};
    bool avoids = std::none_of(
        patterns.begin(), patterns.end(),
        [&](const Pattern& t) { return contains(p, t); });
    if (avoids) out.push_back(p);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

namespace {

// For a pattern A k1 B, the side word records per interior value 2..k-1
// whether it lies in A (left) or B (right).
std::string side_word(const Pattern& t) {
  int k = t.length();
  std::string word(k >= 2 ? k - 2 : 0, '?');
  for (int i = 1; i <= k; ++i) {
    int v = t.entries[i - 1];
    if (v == 1 || v == k) continue;
    word[v - 2] = i < t.vincular ? 'A' : 'B';
  }
  return word;
}

bool is_subsequence(const std::string& needle, const std::string& hay) {
  std::size_t i = 0;
  for (char c : hay) {
    if (i < needle.size() && needle[i] == c) ++i;
  }
  return i == needle.size();
}

}  // namespace

WellBehavedSet::WellBehavedSet(std::vector<Pattern> patterns) {
  if (patterns.empty())
    throw NotWellBehavedError("a well-behaved set must be non-empty");
  std::set<Pattern> closure;
  std::set<std::string> words;
  for (const Pattern& t : patterns) {
    int k = t.length();
    if (k < 2 || t.vincular == 0 || t.entries[t.vincular - 1] != k ||
        t.entries[t.vincular] != 1)
      throw NotWellBehavedError(
          "pattern must have the shape A[k1]B with the glued pair on the "
          "largest and smallest values: " +
          to_string(t));
    words.insert(side_word(t));

    // Close under permuting A and B independently.
    std::vector<int> a_vals(t.entries.begin(),
                            t.entries.begin() + (t.vincular - 1));
    std::vector<int> b_vals(t.entries.begin() + (t.vincular + 1),
                            t.entries.end());
    std::sort(a_vals.begin(), a_vals.end());
    std::sort(b_vals.begin(), b_vals.end());
    do {
      std::vector<int> b_copy = b_vals;
      std::sort(b_copy.begin(), b_copy.end());
      do {
        Pattern variant;
        variant.entries = a_vals;
        variant.entries.push_back(k);
        variant.entries.push_back(1);
        variant.entries.insert(variant.entries.end(), b_copy.begin(),
                               b_copy.end());
        variant.vincular = static_cast<int>(a_vals.size()) + 1;
        closure.insert(std::move(variant));
      } while (std::next_permutation(b_copy.begin(), b_copy.end()));
    } while (std::next_permutation(a_vals.begin(), a_vals.end()));
  }
  std::set<Pattern> input(patterns.begin(), patterns.end());
  input_was_closed_ = input == closure;
  patterns_.assign(closure.begin(), closure.end());
  side_words_.assign(words.begin(), words.end());
}

Congruence congruence_from_patterns(const WellBehavedSet& set, int n) {
  const FenceTable& table = fence_table(n);
  FenceSet bits(table.size());
  for (int idx = 0; idx < table.size(); ++idx) {
    const Fence& f = table.fence(idx);
    // Word of the fence: per value of ]a,b[ ascending, inside L or not.
    std::string word;
    for (int v = f.a + 1; v < f.b; ++v)
      word += (f.left >> (v - 1)) & 1 ? 'A' : 'B';
    for (const std::string& w : set.side_words())
      if (is_subsequence(w, word)) {
        bits.set(idx);
        break;
      }
  }
  Congruence c = Congruence::from_set(n, std::move(bits), /*trust_downset=*/true);
  if (!c.is_downset())
    throw VerificationError(
        "pattern-induced fence set is not a downset of the forcing order");
  return c;
}

std::optional<Permutation> rewrite_step(const WellBehavedSet& set,
                                        const Permutation& p) {
  for (const Pattern& t : set.patterns()) {
    std::optional<Permutation> result;
    match_pattern(p, t, [&](const std::vector<int>& pos) {
      result = p.swapped(pos[t.vincular - 1]);
      return true;
    });
    if (result) return result;
  }
  return std::nullopt;
}

}  // namespace qtope
