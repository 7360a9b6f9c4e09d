#pragma once

#include <cstdint>

namespace qtope {

std::uint64_t catalan(int k);

// Number of integer partitions of n (p(0) = 1).
std::uint64_t partition_count(int n);

// t_n: total number of parts equal to 2 over all partitions of n.
std::uint64_t twos_in_all_partitions(int n);

// Sum over integer compositions of n of weight^(#parts equal to 2).
std::uint64_t weighted_composition_sum(int n, std::uint64_t weight);

// OEIS A052528: b_0 = b_1 = 1, b_k = 2 b_{k-2} + sum_{i<k} b_i.
std::uint64_t a052528(int k);

}  // namespace qtope
