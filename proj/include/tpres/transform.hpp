#pragma once

#include "tpres/poly.hpp"

namespace tpres {

// Small dense rational matrix, row-major.
using DenseMat = std::vector<std::vector<Rat>>;

DenseMat dense_identity(int n);
Rat dense_det(DenseMat m);

// Induced action on the ambient coordinates when g (n_i x n_i) acts on
// factor i and the other factors stay fixed. Coordinates carry multinomial
// scaling, so the matrix is pinned by transport of decomposable points:
// entry (g', g) = multinom(g') * [v^g] prod_j (g v)_j^{g'_j} / multinom(g).
RatMat factor_substitution(const TensorFormat& fmt, int factor, const DenseMat& g);
// Composite over all factors (gs[i] acts on factor i).
RatMat ambient_substitution(const TensorFormat& fmt, const std::vector<DenseMat>& gs);

RatMat mat_mul(const RatMat& a, const RatMat& b);
std::vector<Rat> apply_matrix(const RatMat& m, const std::vector<Rat>& v);
// Pullback f(M x): substitutes x_c -> sum_u M_{c,u} x_u.
Poly substitute(const Poly& f, const RatMat& m);

// Infinitesimal version of factor_substitution at g = id + t E_ab, already
// transposed into the lie_action convention (entry (u,v) weights x_u d/dx_v).
// Every ideal of a G-stable variety is annihilated by these.
RatMat expected_lie_generator(const TensorFormat& fmt, int factor, int a, int b);
// All generators, factor-major, (a, b) row-major within a factor. Spans the
// expected stabilizer together with nothing else (the identities of the
// factors overlap in one global scaling).
std::vector<RatMat> expected_lie_basis(const TensorFormat& fmt);

// Per-factor variable relabeling. perms[i] sends variable j of factor i to
// perms[i][j]; each must be a bijection on {0..n_i-1}.
std::uint32_t permute_coord(const TensorFormat& fmt,
                            const std::vector<std::vector<int>>& perms, std::uint32_t coord);
Monomial permute_monomial(const TensorFormat& fmt,
                          const std::vector<std::vector<int>>& perms, const Monomial& m);
int permutation_sign(const std::vector<int>& perm);

}  // namespace tpres
