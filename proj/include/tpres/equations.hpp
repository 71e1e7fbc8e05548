#pragma once

#include <functional>

#include "tpres/combinat.hpp"
#include "tpres/linalg.hpp"
#include "tpres/subspace.hpp"

namespace tpres {

// Row shape of a flattening: degree each factor contributes to the row side
// (0 <= a_i <= d_i, not all zero, not all full). Bipartitions give 0/1
// shapes; symmetric factors may split strictly.
struct FlatteningShape {
  std::vector<int> row_deg;
  bool operator==(const FlatteningShape& o) const { return row_deg == o.row_deg; }
};

// Symbolic flattening: entry (r, c) = mult[r][c] * t[coord[r][c]], where the
// coordinate merges the row and column exponent vectors and the multiplier
// is the differentiation-convention multinomial (gamma!/beta! per factor).
struct FlatteningMatrix {
  FlatteningShape shape;
  std::vector<std::vector<FactorExp>> row_index;
  std::vector<std::vector<FactorExp>> col_index;
  std::vector<std::vector<std::uint32_t>> coord;
  std::vector<std::vector<Int>> mult;
  std::size_t rows() const { return row_index.size(); }
  std::size_t cols() const { return col_index.size(); }
};

FlatteningShape shape_from_bipartition(const TensorFormat& fmt, const Bipartition& bp);
// All shapes, one per transpose pair (lexicographically smaller row side).
std::vector<FlatteningShape> all_flattening_shapes(const TensorFormat& fmt);
FlatteningMatrix flattening(const TensorFormat& fmt, const FlatteningShape& shape);

// All size x size minors as degree-`size` polynomials, row/col subsets in
// lexicographic order.
std::vector<Poly> minors(const FlatteningMatrix& F, int size);
// Streams the minors of every flattening shape of the format.
void for_each_minor(const TensorFormat& fmt, int size,
                    const std::function<void(const Poly&)>& fn);

// Span of all 2x2 minors over every shape: the degree-2 component of the
// Segre(-Veronese) ideal.
LinearSubspace segre_degree2_component(const TensorFormat& fmt);
// Span of all (r+1) x (r+1) minors: low-degree equations of the r-th secant.
LinearSubspace secant_degree_component(const TensorFormat& fmt, int r);

// { f of degree deg(A)+p : every degree-p contraction of f lies in A }.
// Solved as an exact nullspace problem over the degree-(deg+p) monomial
// basis, or over `support` when supplied.
LinearSubspace prolongation(const LinearSubspace& A, int p, const TensorFormat& fmt,
                            const std::vector<Monomial>* support = nullptr,
                            const Caps& caps = Caps());

bool contained_in_prolongation(const TensorFormat& fmt, const LinearSubspace& A, int p,
                               const Poly& f, const Caps& caps = Caps());

// Sum of r random integer rank-one tensors; coordinates carry the per-factor
// multinomials so rank-one points have rank-one catalecticants. Coordinates
// are integers in Rat form. Deterministic in the seed.
std::vector<Rat> sample_secant_point(const TensorFormat& fmt, int r, std::uint64_t seed,
                                     long bound = 10);

// Exact ranks of the single-factor flattenings at a point.
std::vector<int> multilinear_rank(const TensorFormat& fmt, const std::vector<Rat>& point);
// Rank of one evaluated flattening.
int flattening_rank(const TensorFormat& fmt, const FlatteningShape& shape,
                    const std::vector<Rat>& point);
// True when every bipartition in B sees a rank <= 1 flattening. Zero points
// are an error.
bool partition_rank_le_one(const TensorFormat& fmt, const std::vector<Rat>& point,
                           const std::vector<Bipartition>& B);

}  // namespace tpres
