#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tpres/util.hpp"

namespace tpres {

// Exponent vector of one factor: entries >= 0, length n_i, summing to the
// factor degree. Degree-1 factors have a single 1 entry.
using FactorExp = std::vector<int>;

// All exponent vectors of total degree `deg` in `n` variables, ordered
// lexicographically descending (x1^deg first). This is the coordinate order
// used everywhere: for degree-1 factors it is the natural index order.
std::vector<FactorExp> enumerate_exponents(int n, int deg);

// A tensor space prod_i S^{d_i} C^{n_i} together with its coordinate table.
// Global coordinate index runs mixed-radix over the factors, leftmost factor
// slowest, each factor ordered as in enumerate_exponents.
class TensorFormat {
 public:
  TensorFormat(std::vector<int> dims, std::vector<int> degrees);

  // Multilinear convenience: all degrees 1.
  static TensorFormat segre(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int factors() const { return static_cast<int>(dims_.size()); }

  // Number of coordinates of factor i: C(n_i + d_i - 1, d_i).
  int factor_size(int i) const { return static_cast<int>(factor_exps_[i].size()); }
  const std::vector<FactorExp>& factor_coords(int i) const { return factor_exps_[i]; }
  int factor_coord_index(int i, const FactorExp& e) const;

  // Ambient dimension N = prod_i factor_size(i).
  std::uint32_t ambient_dim() const { return ambient_; }

  std::uint32_t pack(const std::vector<FactorExp>& exps) const;
  std::vector<FactorExp> unpack(std::uint32_t coord) const;
  // Exponent vector of one factor of a packed coordinate, without
  // materializing the rest.
  const FactorExp& factor_exp(std::uint32_t coord, int i) const;
  int factor_local(std::uint32_t coord, int i) const;
  std::uint32_t replace_factor_local(std::uint32_t coord, int i, int local) const;

  // Flattened weight layout: factor i occupies entries
  // [weight_offset(i), weight_offset(i) + n_i).
  int weight_offset(int i) const { return weight_offsets_[i]; }
  int weight_len() const { return weight_len_; }
  // Weight of a single coordinate: concatenation of its exponent vectors.
  std::vector<int> coord_weight(std::uint32_t coord) const;

  // Coordinate text: t[1,2|1|3] lists each factor's index multiset 1-based.
  std::string coord_name(std::uint32_t coord) const;
  std::uint32_t parse_coord(const std::string& name) const;

  std::string to_string() const;  // dims=...,  degrees=...
  static TensorFormat parse(const std::string& literal);

  bool operator==(const TensorFormat& o) const {
    return dims_ == o.dims_ && degrees_ == o.degrees_;
  }

 private:
  std::vector<int> dims_;
  std::vector<int> degrees_;
  std::vector<std::vector<FactorExp>> factor_exps_;
  std::vector<std::map<FactorExp, int>> factor_index_;
  std::vector<std::uint32_t> radix_;  // stride of factor i in the global index
  std::vector<int> weight_offsets_;
  int weight_len_ = 0;
  std::uint32_t ambient_ = 0;
};

}  // namespace tpres
