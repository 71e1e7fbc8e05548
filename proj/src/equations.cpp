#include "tpres/equations.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

namespace tpres {

namespace {

// Cartesian product of per-factor exponent lists, leftmost factor slowest
// (the global coordinate order).
std::vector<std::vector<FactorExp>> side_tuples(const TensorFormat& fmt,
                                                const std::vector<int>& degs) {
  int k = fmt.factors();
  std::vector<std::vector<FactorExp>> lists(k);
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    lists[i] = enumerate_exponents(fmt.dims()[i], degs[i]);
    total *= lists[i].size();
    if (total > Caps().row_cap) throw cap_exceeded_error("flattening side too large");
  }
  std::vector<std::vector<FactorExp>> out;
  out.reserve(total);
  std::vector<std::size_t> pos(k, 0);
  while (true) {
    std::vector<FactorExp> tuple(k);
    for (int i = 0; i < k; ++i) tuple[i] = lists[i][pos[i]];
    out.push_back(std::move(tuple));
    int i = k - 1;
    while (i >= 0 && ++pos[i] == lists[i].size()) pos[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

void validate_shape(const TensorFormat& fmt, const FlatteningShape& shape) {
  if (static_cast<int>(shape.row_deg.size()) != fmt.factors())
    throw dimension_mismatch_error("flattening shape length");
  bool all_zero = true, all_full = true;
  for (int i = 0; i < fmt.factors(); ++i) {
    int a = shape.row_deg[i];
    if (a < 0 || a > fmt.degrees()[i]) throw dimension_mismatch_error("flattening row degree");
    if (a != 0) all_zero = false;
    if (a != fmt.degrees()[i]) all_full = false;
  }
  if (all_zero || all_full) throw dimension_mismatch_error("trivial flattening shape");
}

// gamma! / beta! over one factor, the differentiation multinomial.
Int factor_mult(const FactorExp& gamma, const FactorExp& beta) {
  Int v = 1;
  for (std::size_t j = 0; j < gamma.size(); ++j)
    for (int t = beta[j] + 1; t <= gamma[j]; ++t) v *= t;
  return v;
}

// Size x size determinant of the symbolic submatrix given by row/col ids,
// expanded over permutations.
Poly submatrix_det(const FlatteningMatrix& F, const std::vector<int>& R,
                   const std::vector<int>& C) {
  int s = static_cast<int>(R.size());
  std::vector<int> perm(s);
  for (int i = 0; i < s; ++i) perm[i] = i;
  std::vector<std::pair<Monomial, Rat>> terms;
  do {
    int inv = 0;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j)
        if (perm[i] > perm[j]) ++inv;
    Int coeff = (inv % 2 == 0) ? 1 : -1;
    std::vector<std::uint32_t> coords(s);
    for (int i = 0; i < s; ++i) {
      coeff *= F.mult[R[i]][C[perm[i]]];
      coords[i] = F.coord[R[i]][C[perm[i]]];
    }
    terms.emplace_back(mono_from_coords(std::move(coords)), Rat(coeff));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return poly_from_terms(s, std::move(terms));
}

bool next_combination(std::vector<int>& idx, int n) {
  int s = static_cast<int>(idx.size());
  int i = s - 1;
  while (i >= 0 && idx[i] == n - s + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

void stream_minors(const FlatteningMatrix& F, int size,
                   const std::function<void(const Poly&)>& fn) {
  int rows = static_cast<int>(F.rows()), cols = static_cast<int>(F.cols());
  if (rows < size || cols < size) return;
  Int count = binomial(rows, size) * binomial(cols, size);
  if (count > Int(static_cast<unsigned long>(Caps().row_cap)))
    throw cap_exceeded_error("minor count");
  std::vector<int> R(size), C0(size);
  for (int i = 0; i < size; ++i) R[i] = i;
  do {
    for (int i = 0; i < size; ++i) C0[i] = i;
    std::vector<int> C = C0;
    do {
      Poly d = submatrix_det(F, R, C);
      if (!d.is_zero()) fn(d);
    } while (next_combination(C, cols));
  } while (next_combination(R, rows));
}

}  // namespace

FlatteningShape shape_from_bipartition(const TensorFormat& fmt, const Bipartition& bp) {
  int k = fmt.factors();
  std::vector<char> seen(k, 0);
  FlatteningShape shape;
  shape.row_deg.assign(k, 0);
  for (int i : bp.left) {
    if (i < 0 || i >= k || seen[i]) throw dimension_mismatch_error("bipartition factor index");
    seen[i] = 1;
    shape.row_deg[i] = fmt.degrees()[i];
  }
  for (int i : bp.right) {
    if (i < 0 || i >= k || seen[i]) throw dimension_mismatch_error("bipartition factor index");
    seen[i] = 1;
  }
  for (int i = 0; i < k; ++i)
    if (!seen[i]) throw dimension_mismatch_error("bipartition misses a factor");
  return shape;
}

std::vector<FlatteningShape> all_flattening_shapes(const TensorFormat& fmt) {
  int k = fmt.factors();
  std::set<std::vector<int>> canon;
  std::vector<int> a(k, 0);
  while (true) {
    bool all_zero = true, all_full = true;
    for (int i = 0; i < k; ++i) {
      if (a[i] != 0) all_zero = false;
      if (a[i] != fmt.degrees()[i]) all_full = false;
    }
    if (!all_zero && !all_full) {
      std::vector<int> c(k);
      for (int i = 0; i < k; ++i) c[i] = fmt.degrees()[i] - a[i];
      canon.insert(std::min(a, c));
    }
    int i = k - 1;
    while (i >= 0 && a[i] == fmt.degrees()[i]) a[i--] = 0;
    if (i < 0) break;
    ++a[i];
  }
  std::vector<FlatteningShape> out;
  out.reserve(canon.size());
  for (auto& v : canon) out.push_back(FlatteningShape{v});
  return out;
}

FlatteningMatrix flattening(const TensorFormat& fmt, const FlatteningShape& shape) {
  validate_shape(fmt, shape);
  int k = fmt.factors();
  std::vector<int> col_deg(k);
  for (int i = 0; i < k; ++i) col_deg[i] = fmt.degrees()[i] - shape.row_deg[i];
  FlatteningMatrix F;
  F.shape = shape;
  F.row_index = side_tuples(fmt, shape.row_deg);
  F.col_index = side_tuples(fmt, col_deg);
  if (F.rows() * F.cols() > Caps().row_cap) throw cap_exceeded_error("flattening too large");
  F.coord.assign(F.rows(), std::vector<std::uint32_t>(F.cols()));
  F.mult.assign(F.rows(), std::vector<Int>(F.cols()));
  std::vector<FactorExp> gamma(k);
  for (std::size_t r = 0; r < F.rows(); ++r)
    for (std::size_t c = 0; c < F.cols(); ++c) {
      Int m = 1;
      for (int i = 0; i < k; ++i) {
        gamma[i] = F.row_index[r][i];
        for (std::size_t j = 0; j < gamma[i].size(); ++j) gamma[i][j] += F.col_index[c][i][j];
        m *= factor_mult(gamma[i], F.col_index[c][i]);
      }
      F.coord[r][c] = fmt.pack(gamma);
      F.mult[r][c] = m;
    }
  return F;
}

std::vector<Poly> minors(const FlatteningMatrix& F, int size) {
  if (size < 1) throw dimension_mismatch_error("minor size");
  std::vector<Poly> out;
  stream_minors(F, size, [&](const Poly& p) { out.push_back(p); });
  return out;
}

void for_each_minor(const TensorFormat& fmt, int size,
                    const std::function<void(const Poly&)>& fn) {
  if (size < 1) throw dimension_mismatch_error("minor size");
  for (const auto& shape : all_flattening_shapes(fmt))
    stream_minors(flattening(fmt, shape), size, fn);
}

LinearSubspace segre_degree2_component(const TensorFormat& fmt) {
  LinearSubspace S(2);
  for_each_minor(fmt, 2, [&](const Poly& p) { S.insert(p); });
  return S;
}

LinearSubspace secant_degree_component(const TensorFormat& fmt, int r) {
  if (r < 1) throw dimension_mismatch_error("secant index");
  LinearSubspace S(r + 1);
  for_each_minor(fmt, r + 1, [&](const Poly& p) { S.insert(p); });
  return S;
}

namespace {

// Falling factorial prod over dual's entries of m_c (m_c - 1) ... ; m must
// be divisible by dual.
Int falling(const Monomial& m, const Monomial& dual) {
  Int v = 1;
  for (auto& [c, e] : dual.t) {
    std::uint32_t mc = 0;
    for (auto& [c2, e2] : m.t)
      if (c2 == c) {
        mc = e2;
        break;
      }
    for (std::uint32_t t = 0; t < e; ++t) v *= static_cast<long>(mc - t);
  }
  return v;
}

}  // namespace

LinearSubspace prolongation(const LinearSubspace& A, int p, const TensorFormat& fmt,
                            const std::vector<Monomial>* support, const Caps& caps) {
  if (p < 1) throw dimension_mismatch_error("prolongation order");
  int d = A.degree();
  std::vector<Monomial> M =
      support ? *support : enumerate_monomials(fmt, d + p, caps.monomial_cap);
  for (const auto& m : M)
    if (m.degree() != d + p) throw degree_mismatch_error("prolongation support degree");
  std::vector<Monomial> duals = enumerate_monomials(fmt, p, caps.monomial_cap);

  SparseMatrix mat;
  mat.cols = static_cast<std::uint32_t>(M.size());
  std::uint64_t row_budget = 0;
  for (const auto& dual : duals) {
    // Rows of this dual, keyed by the residual monomial the condition lands
    // on after reduction into A.
    std::unordered_map<Monomial, QRow, MonoHash> rows;
    Monomial q;
    for (std::uint32_t jm = 0; jm < M.size(); ++jm) {
      if (!mono_div(M[jm], dual, q)) continue;
      Rat ff{falling(M[jm], dual)};
      const Poly* b = A.basis_for_pivot(q);
      if (b) {
        for (auto& [m2, c] : b->terms)
          if (!(m2 == q)) rows[m2].emplace_back(jm, -ff * c);
      } else {
        rows[q].emplace_back(jm, ff);
      }
    }
    row_budget += rows.size();
    if (row_budget > caps.row_cap) throw cap_exceeded_error("prolongation rows");
    for (auto& [m2, r] : rows) mat.add_row(std::move(r));
  }

  NullspaceResult ns = nullspace_exact(mat);
  LinearSubspace out(d + p);
  for (const auto& v : ns.kernel) {
    std::vector<std::pair<Monomial, Rat>> terms;
    terms.reserve(v.size());
    for (auto& [col, val] : v) terms.emplace_back(M[col], val);
    out.insert(poly_from_terms(d + p, std::move(terms)));
  }
  return out;
}

bool contained_in_prolongation(const TensorFormat& fmt, const LinearSubspace& A, int p,
                               const Poly& f, const Caps& caps) {
  if (f.degree != A.degree() + p) throw degree_mismatch_error("prolongation membership degree");
  if (f.is_zero()) return true;
  for (const auto& dual : enumerate_monomials(fmt, p, caps.monomial_cap))
    if (!A.contains(contract_mono(dual, f))) return false;
  return true;
}

std::vector<Rat> sample_secant_point(const TensorFormat& fmt, int r, std::uint64_t seed,
                                     long bound) {
  if (r < 1) throw dimension_mismatch_error("secant sample rank");
  if (bound < 1) throw dimension_mismatch_error("secant sample bound");
  int k = fmt.factors();
  // Per-factor multinomial d_i! / prod e_j! table over local coordinates.
  std::vector<std::vector<Int>> multinom(k);
  for (int i = 0; i < k; ++i) {
    const auto& coords = fmt.factor_coords(i);
    multinom[i].reserve(coords.size());
    for (const auto& e : coords) {
      Int v = 1;
      for (int t = 2; t <= fmt.degrees()[i]; ++t) v *= t;
      for (int ej : e)
        for (int t = 2; t <= ej; ++t) v /= t;
      multinom[i].push_back(v);
    }
  }
  Rng rng(seed);
  std::vector<Rat> pt(fmt.ambient_dim(), Rat(0));
  for (int s = 0; s < r; ++s) {
    std::vector<std::vector<Int>> v(k);
    for (int i = 0; i < k; ++i) {
      v[i].resize(fmt.dims()[i]);
      bool nonzero = false;
      while (!nonzero)
        for (auto& x : v[i]) {
          x = rng.symmetric(bound);
          if (x != 0) nonzero = true;
        }
    }
    for (std::uint32_t c = 0; c < fmt.ambient_dim(); ++c) {
      Int term = 1;
      for (int i = 0; i < k; ++i) {
        const FactorExp& e = fmt.factor_exp(c, i);
        term *= multinom[i][fmt.factor_local(c, i)];
        for (std::size_t j = 0; j < e.size(); ++j)
          for (int t = 0; t < e[j]; ++t) term *= v[i][j];
      }
      pt[c] += Rat(term);
    }
  }
  return pt;
}

int flattening_rank(const TensorFormat& fmt, const FlatteningShape& shape,
                    const std::vector<Rat>& point) {
  if (point.size() != fmt.ambient_dim()) throw dimension_mismatch_error("point length");
  FlatteningMatrix F = flattening(fmt, shape);
  SparseMatrix mat;
  mat.cols = static_cast<std::uint32_t>(F.cols());
  for (std::size_t r = 0; r < F.rows(); ++r) {
    QRow row;
    for (std::size_t c = 0; c < F.cols(); ++c) {
      Rat v = Rat(F.mult[r][c]) * point[F.coord[r][c]];
      if (v != 0) row.emplace_back(static_cast<std::uint32_t>(c), v);
    }
    if (!row.empty()) mat.add_row(std::move(row));
  }
  return static_cast<int>(rank_exact(mat));
}

std::vector<int> multilinear_rank(const TensorFormat& fmt, const std::vector<Rat>& point) {
  if (point.size() != fmt.ambient_dim()) throw dimension_mismatch_error("point length");
  int k = fmt.factors();
  std::vector<int> out(k, 0);
  for (int i = 0; i < k; ++i) {
    FlatteningShape shape;
    shape.row_deg.assign(k, 0);
    shape.row_deg[i] = 1;
    bool all_full = true;
    for (int j = 0; j < k; ++j)
      if (shape.row_deg[j] != fmt.degrees()[j]) all_full = false;
    if (all_full) {
      // Plain vector space: rank is 0/1 by nonvanishing.
      bool nonzero = false;
      for (const auto& x : point)
        if (x != 0) nonzero = true;
      out[i] = nonzero ? 1 : 0;
    } else {
      out[i] = flattening_rank(fmt, shape, point);
    }
  }
  return out;
}

bool partition_rank_le_one(const TensorFormat& fmt, const std::vector<Rat>& point,
                           const std::vector<Bipartition>& B) {
  if (point.size() != fmt.ambient_dim()) throw dimension_mismatch_error("point length");
  bool nonzero = false;
  for (const auto& x : point)
    if (x != 0) nonzero = true;
  if (!nonzero) throw verification_error("zero point has no partition rank");
  if (B.empty()) throw dimension_mismatch_error("empty bipartition collection");
  for (const auto& bp : B)
    if (flattening_rank(fmt, shape_from_bipartition(fmt, bp), point) > 1) return false;
  return true;
}

}  // namespace tpres
