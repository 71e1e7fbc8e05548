#include "tpres/transform.hpp"

#include <algorithm>
#include <map>

namespace tpres {

DenseMat dense_identity(int n) {
  DenseMat m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Rat dense_det(DenseMat m) {
  int n = static_cast<int>(m.size());
  for (auto& row : m)
    if (static_cast<int>(row.size()) != n) throw dimension_mismatch_error("determinant shape");
  Rat det(1);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

namespace {

Int exp_multinomial(int d, const FactorExp& e) {
  Int v = 1;
  for (int t = 2; t <= d; ++t) v *= t;
  for (int ej : e)
    for (int t = 2; t <= ej; ++t) v /= t;
  return v;
}

void validate_square(const DenseMat& g, int n) {
  if (static_cast<int>(g.size()) != n) throw dimension_mismatch_error("factor matrix shape");
  for (const auto& row : g)
    if (static_cast<int>(row.size()) != n) throw dimension_mismatch_error("factor matrix shape");
}

}  // namespace

RatMat factor_substitution(const TensorFormat& fmt, int factor, const DenseMat& g) {
  if (factor < 0 || factor >= fmt.factors()) throw dimension_mismatch_error("factor index");
  int n = fmt.dims()[factor], d = fmt.degrees()[factor];
  validate_square(g, n);
  const auto& coords = fmt.factor_coords(factor);
  int S = static_cast<int>(coords.size());
  std::vector<Int> mnom(S);
  for (int a = 0; a < S; ++a) mnom[a] = exp_multinomial(d, coords[a]);

  // Local matrix: image coordinate a expanded over source coordinates b by
  // transporting the decomposable point v -> g v.
  std::vector<std::vector<Rat>> loc(S, std::vector<Rat>(S, Rat(0)));
  for (int a = 0; a < S; ++a) {
    std::map<FactorExp, Rat> expansion{{FactorExp(n, 0), Rat(1)}};
    for (int j = 0; j < n; ++j)
      for (int rep = 0; rep < coords[a][j]; ++rep) {
        std::map<FactorExp, Rat> next;
        for (auto& [e, c] : expansion)
          for (int b = 0; b < n; ++b) {
            if (g[j][b] == 0) continue;
            FactorExp e2 = e;
            ++e2[b];
            next[e2] += c * g[j][b];
          }
        expansion.swap(next);
      }
    for (auto& [e, c] : expansion) {
      if (c == 0) continue;
      int b = fmt.factor_coord_index(factor, e);
      loc[a][b] = Rat(mnom[a]) * c / Rat(mnom[b]);
    }
  }

  RatMat M(fmt.ambient_dim());
  for (std::uint32_t X = 0; X < fmt.ambient_dim(); ++X) {
    int b = fmt.factor_local(X, factor);
    for (int a = 0; a < S; ++a)
      if (loc[a][b] != 0) M.add(fmt.replace_factor_local(X, factor, a), X, loc[a][b]);
  }
  return M;
}

RatMat ambient_substitution(const TensorFormat& fmt, const std::vector<DenseMat>& gs) {
  if (static_cast<int>(gs.size()) != fmt.factors())
    throw dimension_mismatch_error("one matrix per factor");
  RatMat M = factor_substitution(fmt, 0, gs[0]);
  for (int i = 1; i < fmt.factors(); ++i) M = mat_mul(factor_substitution(fmt, i, gs[i]), M);
  return M;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
  if (a.n() != b.n()) throw dimension_mismatch_error("matrix product shape");
  RatMat c(a.n());
  for (std::uint32_t w = 0; w < b.n(); ++w)
    for (auto& [v, bv] : b.col(w))
      for (auto& [u, av] : a.col(v)) c.add(u, w, av * bv);
  return c;
}

std::vector<Rat> apply_matrix(const RatMat& m, const std::vector<Rat>& v) {
  if (v.size() != m.n()) throw dimension_mismatch_error("matrix apply shape");
  std::vector<Rat> out(m.n(), Rat(0));
  for (std::uint32_t j = 0; j < m.n(); ++j) {
    if (v[j] == 0) continue;
    for (auto& [u, val] : m.col(j)) out[u] += val * v[j];
  }
  return out;
}

Poly substitute(const Poly& f, const RatMat& m) {
  // Row c of m is the linear form replacing x_c.
  std::unordered_map<std::uint32_t, Poly> row_form;
  for (auto& [u, v, val] : m.entries()) {
    auto it = row_form.find(u);
    if (it == row_form.end()) {
      Poly p;
      p.degree = 1;
      it = row_form.emplace(u, std::move(p)).first;
    }
    Monomial one;
    one.t.emplace_back(v, 1);
    it->second.terms.emplace_back(std::move(one), val);
  }
  for (auto& [u, p] : row_form) p = poly_from_terms(1, std::move(p.terms));

  std::vector<std::pair<Monomial, Rat>> collected;
  for (auto& [mono, c] : f.terms) {
    Poly acc;
    acc.degree = 0;
    acc.terms.emplace_back(Monomial{}, c);
    for (auto& [coord, e] : mono.t) {
      auto it = row_form.find(coord);
      if (it == row_form.end()) {
        acc = Poly{};
        acc.degree = 0;
        break;
      }
      for (std::uint32_t rep = 0; rep < e; ++rep) acc = poly_mul(acc, it->second);
    }
    collected.insert(collected.end(), acc.terms.begin(), acc.terms.end());
  }
  return poly_from_terms(f.degree, std::move(collected));
}

RatMat expected_lie_generator(const TensorFormat& fmt, int factor, int a, int b) {
  if (factor < 0 || factor >= fmt.factors()) throw dimension_mismatch_error("factor index");
  int n = fmt.dims()[factor];
  if (a < 0 || a >= n || b < 0 || b >= n) throw dimension_mismatch_error("generator index");
  RatMat M(fmt.ambient_dim());
  if (a == b) {
    for (std::uint32_t c = 0; c < fmt.ambient_dim(); ++c) {
      int ea = fmt.factor_exp(c, factor)[a];
      if (ea > 0) M.add(c, c, Rat(ea));
    }
    return M;
  }
  for (std::uint32_t c = 0; c < fmt.ambient_dim(); ++c) {
    const FactorExp& e = fmt.factor_exp(c, factor);
    if (e[a] == 0) continue;
    FactorExp e2 = e;
    --e2[a];
    ++e2[b];
    std::uint32_t c2 = fmt.replace_factor_local(c, factor, fmt.factor_coord_index(factor, e2));
    // Transpose of the point-flow derivative: row is the shifted coordinate.
    M.add(c2, c, Rat(e[b] + 1));
  }
  return M;
}

std::vector<RatMat> expected_lie_basis(const TensorFormat& fmt) {
  std::vector<RatMat> out;
  for (int i = 0; i < fmt.factors(); ++i)
    for (int a = 0; a < fmt.dims()[i]; ++a)
      for (int b = 0; b < fmt.dims()[i]; ++b) out.push_back(expected_lie_generator(fmt, i, a, b));
  return out;
}

std::uint32_t permute_coord(const TensorFormat& fmt,
                            const std::vector<std::vector<int>>& perms, std::uint32_t coord) {
  if (static_cast<int>(perms.size()) != fmt.factors())
    throw dimension_mismatch_error("one permutation per factor");
  std::vector<FactorExp> exps = fmt.unpack(coord);
  for (int i = 0; i < fmt.factors(); ++i) {
    int n = fmt.dims()[i];
    if (static_cast<int>(perms[i].size()) != n)
      throw dimension_mismatch_error("permutation length");
    FactorExp e2(n, 0);
    std::vector<char> hit(n, 0);
    for (int j = 0; j < n; ++j) {
      int img = perms[i][j];
      if (img < 0 || img >= n || hit[img]) throw dimension_mismatch_error("not a permutation");
      hit[img] = 1;
      e2[img] = exps[i][j];
    }
    exps[i] = std::move(e2);
  }
  return fmt.pack(exps);
}

Monomial permute_monomial(const TensorFormat& fmt,
                          const std::vector<std::vector<int>>& perms, const Monomial& m) {
  Monomial out;
  out.t.reserve(m.t.size());
  for (auto& [c, e] : m.t) out.t.emplace_back(permute_coord(fmt, perms, c), e);
  std::sort(out.t.begin(), out.t.end());
  return out;
}

int permutation_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace tpres
