#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tpres/format.hpp"

namespace tpres {

// Monomial in the ambient coordinates: sorted sparse (coordinate, exponent)
// pairs, exponents > 0. The empty monomial is the constant 1.
struct Monomial {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> t;

  int degree() const {
    int d = 0;
    for (auto& [c, e] : t) d += static_cast<int>(e);
    return d;
  }
  bool operator==(const Monomial& o) const { return t == o.t; }
};

// Fixed total order: within equal total degree, a monomial precedes another
// when its dense exponent vector is lexicographically larger (so x1^d is
// first). Lower total degree sorts first across degrees.
bool mono_less(const Monomial& a, const Monomial& b);

struct MonoHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto& [c, e] : m.t) {
      h = (h ^ c) * 0x100000001b3ULL;
      h = (h ^ e) * 0x100000001b3ULL;
    }
    return h;
  }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
// Quotient a / b, or false if b does not divide a.
bool mono_div(const Monomial& a, const Monomial& b, Monomial& out);
Monomial mono_from_coords(std::vector<std::uint32_t> coords);  // product of variables

// Weight: flattened per-factor marginal, layout per TensorFormat.
std::vector<int> weight(const TensorFormat& fmt, const Monomial& m);
// A degree-delta monomial is weight zero when every marginal entry of factor
// i equals delta*d_i/n_i; empty condition when the divisibility fails.
bool is_weight_zero(const TensorFormat& fmt, int delta, const Monomial& m);
bool weight_zero_exists(const TensorFormat& fmt, int delta);

// All degree-delta monomials in the ambient coordinates, in the fixed order.
// Throws cap_exceeded_error if C(N+delta-1, delta) exceeds the cap.
std::vector<Monomial> enumerate_monomials(const TensorFormat& fmt, int delta,
                                          std::uint64_t cap = Caps().monomial_cap);
Int count_monomials(const TensorFormat& fmt, int delta);

// Streams the weight-zero monomials of degree delta in the fixed order;
// stops early (and throws) if more than `cap` are emitted.
void for_each_weight_zero(const TensorFormat& fmt, int delta,
                          const std::function<void(const Monomial&)>& fn,
                          std::uint64_t cap = Caps().monomial_cap);
std::vector<Monomial> enumerate_weight_zero(const TensorFormat& fmt, int delta,
                                            std::uint64_t cap = Caps().monomial_cap);

std::string mono_to_string(const TensorFormat& fmt, const Monomial& m);

}  // namespace tpres
