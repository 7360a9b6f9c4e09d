#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtope/errors.hpp"

namespace qtope {

// Everything in this library enumerates over S_n, so n is capped where n!
// (or worse) enters the picture. 12 is the hard cap for plain permutation
// arithmetic; tighter per-operation budgets live with the operations.
inline constexpr int kMaxN = 12;
inline constexpr int kMaxPairs = kMaxN * (kMaxN - 1) / 2;  // 66

std::uint64_t factorial(int n);

/// A permutation of [n] in one-line notation. Values and positions are
/// 1-based throughout, matching the combinatorial conventions. n = 0 is the
/// empty permutation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::span<const int> entries);
  Permutation(std::initializer_list<int> entries)
      : Permutation(std::span<const int>(entries.begin(), entries.size())) {}

  static Permutation identity(int n);
  static Permutation reversal(int n);  // n n-1 ... 1

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }
  int at(int pos) const { return e_[pos - 1]; }
  int position_of(int value) const;
  std::vector<int> entries() const;

  Permutation reversed() const;
  // Transpose the entries at positions pos, pos+1.
  Permutation swapped(int pos) const;

  bool ascent_at(int pos) const { return e_[pos - 1] < e_[pos]; }
  int ascents() const;
  int descents() const;

  // 4 bits per entry; unique for n <= 12. Used as a hash key.
  std::uint64_t code() const;
  std::uint64_t lex_rank() const;
  static Permutation from_lex_rank(int n, std::uint64_t rank);

  bool operator==(const Permutation&) const = default;
  // Lexicographic among equal lengths (trailing slots are kept zeroed).
  auto operator<=>(const Permutation&) const = default;

 private:
  std::int8_t n_ = 0;
  std::array<std::uint8_t, kMaxN> e_{};
};

/// Set of decreasing value pairs (b,a), b > a, of a permutation, stored as a
/// bitset over the canonical pair ordering (2,1),(3,1),(3,2),(4,1),... so
/// that subset and closure tests are word-parallel.
class InversionSet {
 public:
  static constexpr int pair_index(int b, int a) {
    return (b - 1) * (b - 2) / 2 + (a - 1);
  }

  bool contains(int b, int a) const { return bits_[pair_index(b, a)]; }
  void insert(int b, int a) { bits_.set(pair_index(b, a)); }
  int count() const { return static_cast<int>(bits_.count()); }
  bool subset_of(const InversionSet& o) const {
    return (bits_ & ~o.bits_).none();
  }
  std::vector<std::pair<int, int>> pairs(int n) const;

  // Fixpoint of the chain rule: (c,b) and (b,a) present force (c,a).
  InversionSet closed(int n) const;

  friend InversionSet operator|(const InversionSet& x, const InversionSet& y) {
    InversionSet r;
    r.bits_ = x.bits_ | y.bits_;
    return r;
  }
  bool operator==(const InversionSet&) const = default;

 private:
  std::bitset<kMaxPairs> bits_;
};

InversionSet inversion_set(const Permutation& p);

// Rebuilds the permutation whose inversion set is `inv`. Throws
// VerificationError if `inv` is not realizable (never happens for closures
// of unions of inversion sets, since the weak order is a lattice).
Permutation permutation_with_inversions(int n, const InversionSet& inv);

bool weak_leq(const Permutation& p, const Permutation& q);
Permutation join(const Permutation& p, const Permutation& q);
Permutation meet(const Permutation& p, const Permutation& q);

struct CoverNeighbors {
  std::vector<Permutation> down;  // transposed descents
  std::vector<Permutation> up;    // transposed ascents
};
CoverNeighbors cover_neighbors(const Permutation& p);

// c_i: insert the new largest value n at position i (1 <= i <= n).
Permutation insert_largest(const Permutation& p, int position);
// p(pi): delete the largest value.
Permutation remove_largest(const Permutation& p);

enum class JumpDirection { kLeft, kRight };

// Cyclic rotation moving `value` over `steps` adjacent smaller entries.
// Returns nullopt when the crossed entries are not all smaller or the jump
// runs off the end of the permutation.
std::optional<Permutation> jump(const Permutation& p, int value,
                                JumpDirection direction, int steps);

// Lengths of the longest increasing and decreasing subsequences.
std::pair<int, int> lis_lds(const Permutation& p);

// Text format: values separated by single spaces ("2 4 1 3"). For n <= 9 a
// compact digit string ("2413") is also accepted on input.
Permutation parse_permutation(std::string_view text);
std::string to_string(const Permutation& p);

}  // namespace qtope
