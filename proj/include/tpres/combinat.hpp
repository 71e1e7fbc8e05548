#pragma once

#include <string>
#include <vector>

#include "tpres/util.hpp"

namespace tpres {

// Bipartition {I | J} of the factor set {0..k-1}; left holds factor 0.
struct Bipartition {
  std::vector<int> left, right;

  static Bipartition from_left(int k, std::vector<int> left_set);
  std::string to_string() const;  // 1-based, e.g. "12|34" (commas when k > 9)
  bool operator==(const Bipartition& o) const { return left == o.left; }
};

// All 2^(k-1) - 1 bipartitions, ordered by the left set as a bitmask.
std::vector<Bipartition> all_bipartitions(int k);
Bipartition parse_bipartition(int k, const std::string& text);
std::vector<Bipartition> parse_bipartition_list(int k, const std::string& text);

// min(prod_{i in I} n_i, prod_{j in J} n_j).
Int bipartition_value(const Bipartition& bp, const std::vector<int>& dims);

using SetPartition = std::vector<std::vector<int>>;  // blocks sorted by min

// Common refinement of the bipartitions viewed as 2-block partitions.
SetPartition set_partition_meet(int k, const std::vector<Bipartition>& B);
// Separating iff the meet is the all-singletons partition.
bool is_separating(int k, const std::vector<Bipartition>& B);

struct BoundResult {
  Int s = 0;
  std::vector<Bipartition> witness;  // a separating family realizing s
  Int r_max = 0;                     // s - 1
};

// s(n) by threshold descent: the largest t for which the family of all
// bipartitions of value >= t is separating (any separating family with
// min value t is contained in that family, so the descent is exact).
BoundResult s_of_n(const std::vector<int>& dims);

struct PreserverDescriptor {
  SetPartition blocks;            // meet of the defining bipartitions
  std::vector<int> merged_dims;   // per-block products, block order
  Int lie_dim = 0;                // sum (D_p^2 - 1) + 1
  Int shat_order = 1;             // block permutations with equal dim multisets
  std::string shat_expr;          // e.g. "S2 x S2", "1"
};

// Predicted preserver of the partition variety cut out by B.
PreserverDescriptor predicted_partition_preserver(const std::vector<int>& dims,
                                                  const std::vector<Bipartition>& B);

// dim of the image of prod_i gl(n_i) in gl of the ambient space.
Int expected_preserver_dim(const std::vector<int>& dims);

// Non-redundancy of target multilinear ranks: for every factor either
// d_i >= 2 or r_i <= prod_{j != i} C(r_j + d_j - 1, d_j).
bool is_nonredundant(const std::vector<int>& degrees, const std::vector<int>& ranks);

}  // namespace tpres
