#include "qtope/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qtope {

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

Permutation::Permutation(std::span<const int> entries) {
  if (entries.size() > static_cast<std::size_t>(kMaxN)) {
    throw BudgetError("permutation length exceeds the supported maximum n=" +
                      std::to_string(kMaxN));
  }
  n_ = static_cast<std::int8_t>(entries.size());
  std::array<bool, kMaxN + 1> seen{};
  for (int i = 0; i < n_; ++i) {
    int v = entries[i];
    if (v < 1 || v > n_ || seen[v]) {
      throw InvalidInputError("entries are not a permutation of 1.." +
                              std::to_string(static_cast<int>(n_)));
    }
    seen[v] = true;
    e_[i] = static_cast<std::uint8_t>(v);
  }
}

Permutation Permutation::identity(int n) {
  Permutation p;
  if (n < 0 || n > kMaxN) throw BudgetError("identity: n out of range");
  p.n_ = static_cast<std::int8_t>(n);
  for (int i = 0; i < n; ++i) p.e_[i] = static_cast<std::uint8_t>(i + 1);
  return p;
}

Permutation Permutation::reversal(int n) {
  Permutation p = identity(n);
  std::reverse(p.e_.begin(), p.e_.begin() + n);
  return p;
}

int Permutation::position_of(int value) const {
  for (int i = 0; i < n_; ++i)
    if (e_[i] == value) return i + 1;
  throw InvalidInputError("value " + std::to_string(value) +
                          " does not occur in the permutation");
}

std::vector<int> Permutation::entries() const {
  return std::vector<int>(e_.begin(), e_.begin() + n_);
}

Permutation Permutation::reversed() const {
  Permutation r = *this;
  std::reverse(r.e_.begin(), r.e_.begin() + n_);
  return r;
}

Permutation Permutation::swapped(int pos) const {
  Permutation r = *this;
  std::swap(r.e_[pos - 1], r.e_[pos]);
  return r;
}

int Permutation::ascents() const {
  int c = 0;
  for (int i = 0; i + 1 < n_; ++i) c += e_[i] < e_[i + 1];
  return c;
}

int Permutation::descents() const {
  int c = 0;
  for (int i = 0; i + 1 < n_; ++i) c += e_[i] > e_[i + 1];
  return c;
}

std::uint64_t Permutation::code() const {
  std::uint64_t c = 0;
  for (int i = 0; i < n_; ++i) c |= static_cast<std::uint64_t>(e_[i]) << (4 * i);
  return c;
}

std::uint64_t Permutation::lex_rank() const {
  std::uint64_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller_after = 0;
    for (int j = i + 1; j < n_; ++j) smaller_after += e_[j] < e_[i];
    rank += smaller_after * factorial(n_ - 1 - i);
  }
  return rank;
}

Permutation Permutation::from_lex_rank(int n, std::uint64_t rank) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i + 1;
  std::vector<int> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::uint64_t f = factorial(n - 1 - i);
    auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(out);
}

std::vector<std::pair<int, int>> InversionSet::pairs(int n) const {
  std::vector<std::pair<int, int>> out;
  for (int b = 2; b <= n; ++b)
    for (int a = 1; a < b; ++a)
      if (contains(b, a)) out.emplace_back(b, a);
  return out;
}

InversionSet InversionSet::closed(int n) const {
  InversionSet r = *this;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int c = 3; c <= n; ++c)
      for (int b = 2; b < c; ++b) {
        if (!r.contains(c, b)) continue;
        for (int a = 1; a < b; ++a) {
          if (r.contains(b, a) && !r.contains(c, a)) {
            r.insert(c, a);
            changed = true;
          }
        }
      }
  }
  return r;
}

InversionSet inversion_set(const Permutation& p) {
  InversionSet inv;
  int n = p.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (p.at(i) > p.at(j)) inv.insert(p.at(i), p.at(j));
  return inv;
}

Permutation permutation_with_inversions(int n, const InversionSet& inv) {
  // v precedes w  iff  (v < w and (w,v) not inverted) or (v > w and (v,w)
  // inverted). A realizable set makes this a total order; pick the front
  // element n times.
  auto precedes = [&](int v, int w) {
    return v < w ? !inv.contains(w, v) : inv.contains(v, w);
  };
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i + 1;
  std::vector<int> out;
  out.reserve(n);
  while (!remaining.empty()) {
    int front = -1;
    for (int v : remaining) {
      bool first = true;
      for (int w : remaining)
        if (w != v && !precedes(v, w)) {
          first = false;
          break;
        }
      if (first) {
        if (front != -1)
          throw VerificationError("inversion set is not realizable");
        front = v;
      }
    }
    if (front == -1)
      throw VerificationError("inversion set is not realizable");
    out.push_back(front);
    remaining.erase(std::find(remaining.begin(), remaining.end(), front));
  }
  return Permutation(out);
}

namespace {
void require_same_size(const Permutation& p, const Permutation& q,
                       const char* op) {
  if (p.size() != q.size())
    throw InvalidInputError(std::string(op) +
                            ": permutations have different lengths");
}
}  // namespace

bool weak_leq(const Permutation& p, const Permutation& q) {
  require_same_size(p, q, "weak_leq");
  return inversion_set(p).subset_of(inversion_set(q));
}

Permutation join(const Permutation& p, const Permutation& q) {
  require_same_size(p, q, "join");
  int n = p.size();
  return permutation_with_inversions(
      n, (inversion_set(p) | inversion_set(q)).closed(n));
}

Permutation meet(const Permutation& p, const Permutation& q) {
  // Reversal complements the inversion set, turning meets into joins.
  require_same_size(p, q, "meet");
  return join(p.reversed(), q.reversed()).reversed();
}

CoverNeighbors cover_neighbors(const Permutation& p) {
  CoverNeighbors r;
  for (int i = 1; i < p.size(); ++i) {
    if (p.ascent_at(i))
      r.up.push_back(p.swapped(i));
    else
      r.down.push_back(p.swapped(i));
  }
  return r;
}

Permutation insert_largest(const Permutation& p, int position) {
  int n = p.size() + 1;
  if (n > kMaxN) throw BudgetError("insert_largest: resulting n exceeds cap");
  if (position < 1 || position > n)
    throw InvalidInputError("insert_largest: position out of range");
  std::vector<int> e = p.entries();
  e.insert(e.begin() + (position - 1), n);
  return Permutation(e);
}

Permutation remove_largest(const Permutation& p) {
  if (p.empty())
    throw InvalidInputError("remove_largest: permutation is empty");
  std::vector<int> e = p.entries();
  e.erase(std::find(e.begin(), e.end(), p.size()));
  return Permutation(e);
}

std::optional<Permutation> jump(const Permutation& p, int value,
                                JumpDirection direction, int steps) {
  if (steps < 1) throw InvalidInputError("jump: steps must be >= 1");
  int n = p.size();
  int pos = p.position_of(value);
  std::vector<int> e = p.entries();
  if (direction == JumpDirection::kRight) {
    if (pos + steps > n) return std::nullopt;
    for (int j = pos; j < pos + steps; ++j)
      if (e[j] > value) return std::nullopt;
    std::rotate(e.begin() + (pos - 1), e.begin() + pos, e.begin() + pos + steps);
  } else {
    if (pos - steps < 1) return std::nullopt;
    for (int j = pos - steps - 1; j < pos - 1; ++j)
      if (e[j] > value) return std::nullopt;
    std::rotate(e.begin() + (pos - steps - 1), e.begin() + (pos - 1),
                e.begin() + pos);
  }
  return Permutation(e);
}

std::pair<int, int> lis_lds(const Permutation& p) {
  int n = p.size();
  std::vector<int> inc(n, 1), dec(n, 1);
  int r = 0, s = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (p.at(j + 1) < p.at(i + 1)) inc[i] = std::max(inc[i], inc[j] + 1);
      if (p.at(j + 1) > p.at(i + 1)) dec[i] = std::max(dec[i], dec[j] + 1);
    }
    r = std::max(r, inc[i]);
    s = std::max(s, dec[i]);
  }
  return {r, s};
}

Permutation parse_permutation(std::string_view text) {
  // Trim.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) return Permutation();

  std::vector<int> entries;
  if (text.find_first_of(" \t") == std::string_view::npos) {
    // Compact digit string, n <= 9.
    for (char c : text) {
      if (c < '1' || c > '9')
        throw InvalidInputError("compact permutation may only contain digits 1..9");
      entries.push_back(c - '0');
    }
  } else {
    std::istringstream in{std::string(text)};
    int v;
    while (in >> v) entries.push_back(v);
    if (!in.eof())
      throw InvalidInputError("malformed permutation: " + std::string(text));
  }
  return Permutation(entries);
}

std::string to_string(const Permutation& p) {
  std::string out;
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1) out += ' ';
    out += std::to_string(p.at(i));
  }
  return out;
}

}  // namespace qtope
