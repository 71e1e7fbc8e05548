#include "doctest.h"

#include "tpres/poly.hpp"
#include "tpres/subspace.hpp"
#include "tpres/transform.hpp"

using namespace tpres;

namespace {

// Two variables x, y: a rank-1 format with a 2-dimensional ambient space.
TensorFormat xy() { return TensorFormat::segre({2}); }

Poly mono_poly(std::vector<std::uint32_t> coords, Rat c = 1) {
  return poly_one_term(mono_from_coords(std::move(coords)), c);
}

Poly det2(const TensorFormat& fmt) {
  Poly d = mono_poly({fmt.parse_coord("t[1|1]"), fmt.parse_coord("t[2|2]")});
  poly_axpy(d, -1, mono_poly({fmt.parse_coord("t[1|2]"), fmt.parse_coord("t[2|1]")}));
  return d;
}

Poly random_poly(const TensorFormat& fmt, int degree, int terms, Rng& rng) {
  std::vector<std::pair<Monomial, Rat>> ts;
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> cs;
    for (int i = 0; i < degree; ++i)
      cs.push_back(static_cast<std::uint32_t>(rng.below(fmt.ambient_dim())));
    ts.emplace_back(mono_from_coords(std::move(cs)), Rat(rng.symmetric(5)));
  }
  return poly_from_terms(degree, std::move(ts));
}

RatMat random_mat(std::uint32_t n, int nnz, Rng& rng) {
  RatMat A(n);
  for (int i = 0; i < nnz; ++i)
    A.add(static_cast<std::uint32_t>(rng.below(n)), static_cast<std::uint32_t>(rng.below(n)),
          Rat(rng.symmetric(4)));
  return A;
}

}  // namespace

TEST_CASE("contraction by differentiation") {
  TensorFormat fmt = xy();
  // (xy)-dual applied to x^2 y^2 gives 4xy.
  Poly f = mono_poly({0, 0, 1, 1});
  Poly op = mono_poly({0, 1});
  Poly r = contract(op, f);
  CHECK(poly_equal(r, mono_poly({0, 1}, 4)));
  // x-dual applied to x^2 y gives 2xy.
  CHECK(poly_equal(contract(mono_poly({0}), mono_poly({0, 0, 1})), mono_poly({0, 1}, 2)));
  // Degree mismatch is an error.
  CHECK_THROWS_AS(contract(f, op), degree_mismatch_error);
  // Annihilation: y-dual cubed applied to x^2 y^2 is zero (exponent short).
  CHECK(contract(mono_poly({1, 1, 1}), f).is_zero());
}

TEST_CASE("contraction is bilinear and composes multiplicatively") {
  TensorFormat fmt = xy();
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Poly f = random_poly(fmt, 5, 4, rng);
    Poly a = random_poly(fmt, 1, 2, rng);
    Poly b = random_poly(fmt, 2, 2, rng);
    // (a*b) -| f = a -| (b -| f)
    CHECK(poly_equal(contract(poly_mul(a, b), f), contract(a, contract(b, f))));
  }
}

TEST_CASE("lie_action basics") {
  TensorFormat fmt = xy();
  Poly f = mono_poly({1, 1});  // y^2
  RatMat e12(2);
  e12.add(0, 1, 1);  // x d/dy
  CHECK(poly_equal(lie_action(e12, f), mono_poly({0, 1}, 2)));

  // Identity acts as the Euler operator: degree * f.
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Poly g = random_poly(fmt, 4, 3, rng);
    Poly euler = lie_action(RatMat::identity(2), g);
    Poly scaled = g;
    poly_scale(scaled, 4);
    CHECK(poly_equal(euler, scaled));
  }
}

TEST_CASE("lie_action is a derivation (Leibniz)") {
  TensorFormat fmt = TensorFormat::segre({2, 2});
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Poly f = random_poly(fmt, 2, 3, rng);
    Poly g = random_poly(fmt, 3, 3, rng);
    RatMat A = random_mat(4, 5, rng);
    Poly lhs = lie_action(A, poly_mul(f, g));
    Poly rhs = poly_mul(lie_action(A, f), g);
    poly_axpy(rhs, 1, poly_mul(f, lie_action(A, g)));
    CHECK(poly_equal(lhs, rhs));
  }
}

TEST_CASE("evaluation") {
  TensorFormat fmt = TensorFormat::segre({2, 2});
  Poly d = det2(fmt);
  CHECK(evaluate(d, {1, 2, 2, 4}) == 0);
  CHECK(evaluate(d, {1, 0, 0, 1}) == 1);
  CHECK(evaluate(d, {Rat(1, 2), 1, 1, 4}) == Rat(2) - 1);
}

TEST_CASE("poly text round trip") {
  TensorFormat fmt = TensorFormat::segre({2, 2});
  Poly d = det2(fmt);
  std::string s = poly_to_string(fmt, d);
  CHECK(s == "1*t[1|1]*t[2|2] - 1*t[1|2]*t[2|1]");
  CHECK(poly_equal(poly_parse(fmt, s), d));

  Poly p = poly_parse(fmt, "-3/2*t[1|1]^2 + t[1|2]*t[2|1]");
  CHECK(p.terms.size() == 2);
  CHECK(p.terms[0].second == Rat(-3, 2));
  CHECK(poly_equal(poly_parse(fmt, poly_to_string(fmt, p)), p));
  CHECK(poly_parse(fmt, "0").is_zero());
  CHECK_THROWS_AS(poly_parse(fmt, "t[1|1] + t[1|2]*t[2|1]"), degree_mismatch_error);
}

TEST_CASE("canonicalization clears denominators and fixes sign") {
  TensorFormat fmt = TensorFormat::segre({2, 2});
  Poly p = poly_parse(fmt, "-1/2*t[1|1]*t[2|2] + 3/4*t[1|2]*t[2|1]");
  poly_canonicalize(p);
  CHECK(poly_to_string(fmt, p) == "2*t[1|1]*t[2|2] - 3*t[1|2]*t[2|1]");
}

TEST_CASE("echelonize and reduce") {
  TensorFormat fmt = xy();
  Poly xyp = mono_poly({0, 1});
  Poly y2 = mono_poly({1, 1});
  Poly mixed = poly_add(xyp, y2);
  LinearSubspace sub = echelonize({xyp, mixed, y2}, 2);
  CHECK(sub.dim() == 2);
  CHECK(sub.contains(mixed));
  CHECK(!sub.contains(mono_poly({0, 0})));

  // Re-inserting members does not grow the dimension.
  LinearSubspace again = sub;
  for (const Poly& b : sub.basis()) CHECK(!again.insert(b));
}

TEST_CASE("reduce against a determinant span leaves the complement") {
  TensorFormat fmt = TensorFormat::segre({2, 2});
  LinearSubspace sub = echelonize({det2(fmt)}, 2);
  Poly r = sub.reduce(mono_poly({0, 3}));  // t11*t22
  CHECK(!r.is_zero());
  CHECK(poly_equal(r, mono_poly({1, 2})));  // t12*t21 remains
}

TEST_CASE("echelon basis satisfies the reduced-form invariant") {
  TensorFormat fmt = TensorFormat::segre({2, 2, 2});
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Poly> gens;
    for (int i = 0; i < 8; ++i) gens.push_back(random_poly(fmt, 2, 4, rng));
    LinearSubspace sub = echelonize(gens, 2);
    for (std::size_t i = 0; i < sub.dim(); ++i) {
      CHECK(sub[i].terms.front().second == 1);
      for (std::size_t j = 0; j < sub.dim(); ++j) {
        if (i == j) continue;
        CHECK(poly_coeff(sub[j], sub[i].lead()) == nullptr);
      }
    }
    for (const Poly& g : gens) CHECK(sub.contains(g));
  }
}

TEST_CASE("contraction is equivariant under coordinate relabeling") {
  TensorFormat fmt = TensorFormat::segre({2, 3});
  Rng rng(31415);
  auto random_perms = [&]() {
    std::vector<std::vector<int>> perms;
    for (int n : fmt.dims()) {
      std::vector<int> p(n);
      for (int i = 0; i < n; ++i) p[i] = i;
      for (int i = n - 1; i > 0; --i)
        std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
      perms.push_back(std::move(p));
    }
    return perms;
  };
  auto random_poly_deg = [&](int deg, int nterms) {
    std::vector<std::pair<Monomial, Rat>> terms;
    for (int t = 0; t < nterms; ++t) {
      Monomial m;
      for (int d = 0; d < deg; ++d) {
        Monomial x;
        x.t.emplace_back(static_cast<std::uint32_t>(rng.below(fmt.ambient_dim())), 1);
        m = mono_mul(m, x);
      }
      terms.emplace_back(std::move(m), Rat(rng.symmetric(5)));
    }
    return poly_from_terms(deg, std::move(terms));
  };
  auto relabel = [&](const Poly& f, const std::vector<std::vector<int>>& perms) {
    std::vector<std::pair<Monomial, Rat>> terms;
    for (const auto& [m, c] : f.terms)
      terms.emplace_back(permute_monomial(fmt, perms, m), c);
    return poly_from_terms(f.degree, std::move(terms));
  };
  for (int trial = 0; trial < 100; ++trial) {
    auto perms = random_perms();
    Poly op = random_poly_deg(1 + static_cast<int>(rng.below(2)), 2);
    Poly f = random_poly_deg(op.degree + 1 + static_cast<int>(rng.below(2)), 3);
    Poly lhs = contract(relabel(op, perms), relabel(f, perms));
    Poly rhs = relabel(contract(op, f), perms);
    CHECK(poly_equal(lhs, rhs));
  }
}
