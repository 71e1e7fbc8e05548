#pragma once

#include <unordered_map>
#include <vector>

#include "tpres/poly.hpp"

namespace tpres {

// Echelonized subspace of the homogeneous degree-d component. Reduced row
// echelon form over monomials: each basis element has coefficient 1 on its
// pivot (its smallest monomial in the fixed order), and that pivot occurs in
// no other basis element.
class LinearSubspace {
 public:
  explicit LinearSubspace(int degree) : degree_(degree) {}

  int degree() const { return degree_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Poly>& basis() const { return basis_; }
  const Poly& operator[](std::size_t i) const { return basis_[i]; }

  // Insert after reduction; returns true when the dimension grew.
  bool insert(Poly f);

  // Residual of f modulo the subspace; zero iff f is a member.
  Poly reduce(const Poly& f) const;
  bool contains(const Poly& f) const { return reduce(f).is_zero(); }
  bool has_pivot(const Monomial& m) const { return pivots_.count(m) != 0; }
  // Basis element whose pivot is m, or nullptr.
  const Poly* basis_for_pivot(const Monomial& m) const {
    auto it = pivots_.find(m);
    return it == pivots_.end() ? nullptr : &basis_[it->second];
  }

  // Set equality via mutual containment (dimensions first).
  bool same_span(const LinearSubspace& other) const;

 private:
  int degree_;
  std::vector<Poly> basis_;
  std::unordered_map<Monomial, std::size_t, MonoHash> pivots_;
};

LinearSubspace echelonize(const std::vector<Poly>& gens, int degree);

}  // namespace tpres
