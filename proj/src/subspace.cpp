#include "tpres/subspace.hpp"

namespace tpres {

Poly LinearSubspace::reduce(const Poly& f) const {
  if (f.is_zero()) return f;
  if (f.degree != degree_)
    throw degree_mismatch_error("reduce: degree does not match subspace");
  // RREF invariant: no basis element contains another's pivot, so the pivot
  // coefficients of f alone give the full combination in one pass.
  Poly res = f;
  for (auto& [m, c] : f.terms) {
    auto it = pivots_.find(m);
    if (it == pivots_.end()) continue;
    Rat coeff = c;  // still the residual coefficient: pivots are untouched by
                    // earlier subtractions of other basis elements
    poly_axpy(res, -coeff, basis_[it->second]);
  }
  return res;
}

bool LinearSubspace::insert(Poly f) {
  Poly r = reduce(f);
  if (r.is_zero()) return false;
  const Monomial pivot = r.lead();
  Rat inv = 1 / r.terms.front().second;
  poly_scale(r, inv);
  for (auto& b : basis_) {
    const Rat* c = poly_coeff(b, pivot);
    if (c) {
      Rat coeff = *c;
      poly_axpy(b, -coeff, r);
    }
  }
  pivots_[pivot] = basis_.size();
  basis_.push_back(std::move(r));
  return true;
}

bool LinearSubspace::same_span(const LinearSubspace& other) const {
  if (dim() != other.dim()) return false;
  for (auto& b : basis_)
    if (!other.contains(b)) return false;
  return true;
}

LinearSubspace echelonize(const std::vector<Poly>& gens, int degree) {
  LinearSubspace sub(degree);
  for (const Poly& g : gens) {
    if (g.is_zero()) continue;
    if (g.degree != degree)
      throw degree_mismatch_error("echelonize: generator degree mismatch");
    sub.insert(g);
  }
  return sub;
}

}  // namespace tpres
