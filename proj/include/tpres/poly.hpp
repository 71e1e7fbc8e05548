#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tpres/monomial.hpp"

namespace tpres {

// Homogeneous polynomial in the ambient coordinates, exact rational
// coefficients. Terms sorted by mono_less, no zero coefficients. A zero
// polynomial has empty terms but keeps its nominal degree.
struct Poly {
  int degree = 0;
  std::vector<std::pair<Monomial, Rat>> terms;

  bool is_zero() const { return terms.empty(); }
  // Leading (smallest) monomial; terms are sorted ascending.
  const Monomial& lead() const { return terms.front().first; }
};

Poly poly_from_terms(int degree, std::vector<std::pair<Monomial, Rat>> terms);
Poly poly_one_term(const Monomial& m, const Rat& c);

// dst += c * src (sorted merge).
void poly_axpy(Poly& dst, const Rat& c, const Poly& src);
Poly poly_add(const Poly& a, const Poly& b);
void poly_scale(Poly& p, const Rat& c);
Poly poly_mul(const Poly& a, const Poly& b);
bool poly_equal(const Poly& a, const Poly& b);
// True when a == c*b for some nonzero rational c.
bool poly_proportional(const Poly& a, const Poly& b);
const Rat* poly_coeff(const Poly& p, const Monomial& m);

// Scale to integer coefficients with content 1 and first term positive.
void poly_canonicalize(Poly& p);

// Apolarity contraction: op's coordinates act as partial derivatives
// (pure differentiation, falling factorials, no factorial normalization).
// Requires deg(op) <= deg(f); the result has degree deg(f) - deg(op).
Poly contract(const Poly& op, const Poly& f);
Poly contract_mono(const Monomial& dual, const Poly& f);

// Sparse rational N x N matrix, stored by columns; the Lie-operator type.
// Entry (u, v) weights x_u d/dx_v in lie_action.
class RatMat {
 public:
  explicit RatMat(std::uint32_t n) : n_(n) {}
  std::uint32_t n() const { return n_; }

  void add(std::uint32_t u, std::uint32_t v, const Rat& val);
  const std::vector<std::pair<std::uint32_t, Rat>>& col(std::uint32_t v) const;
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Rat>> entries() const;
  static RatMat identity(std::uint32_t n);
  std::size_t nnz() const;

 private:
  std::uint32_t n_;
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, Rat>>> cols_;
  static const std::vector<std::pair<std::uint32_t, Rat>> empty_;
};

// A . f = sum_{u,v} a_uv x_u df/dx_v. Preserves degree.
Poly lie_action(const RatMat& A, const Poly& f);

Rat evaluate(const Poly& f, const std::vector<Rat>& point);

std::string poly_to_string(const TensorFormat& fmt, const Poly& p);
Poly poly_parse(const TensorFormat& fmt, const std::string& text);

}  // namespace tpres
