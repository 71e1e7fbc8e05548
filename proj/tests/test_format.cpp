#include "doctest.h"

#include "tpres/format.hpp"
#include "tpres/monomial.hpp"

using namespace tpres;

namespace {

// Filter-based oracle for the weight-zero enumeration.
std::vector<Monomial> weight_zero_by_filter(const TensorFormat& fmt, int delta) {
  std::vector<Monomial> out;
  for (const Monomial& m : enumerate_monomials(fmt, delta))
    if (is_weight_zero(fmt, delta, m)) out.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("per-factor exponent enumeration is lex-descending") {
  auto e21 = enumerate_exponents(2, 1);
  REQUIRE(e21.size() == 2);
  CHECK(e21[0] == FactorExp{1, 0});
  CHECK(e21[1] == FactorExp{0, 1});
  auto e23 = enumerate_exponents(2, 3);
  REQUIRE(e23.size() == 4);
  CHECK(e23[0] == FactorExp{3, 0});
  CHECK(e23[1] == FactorExp{2, 1});
  CHECK(e23[2] == FactorExp{1, 2});
  CHECK(e23[3] == FactorExp{0, 3});
}

TEST_CASE("ambient dimensions") {
  CHECK(TensorFormat::segre({2, 2, 2, 2}).ambient_dim() == 16);
  CHECK(TensorFormat({3}, {3}).ambient_dim() == 10);
  CHECK(TensorFormat({2, 3}, {2, 1}).ambient_dim() == 9);
}

TEST_CASE("pack/unpack bijection is exhaustive on mid-sized formats") {
  std::vector<TensorFormat> fmts = {
      TensorFormat::segre({10, 10, 10}),
      TensorFormat({3}, {9}),
      TensorFormat({4, 5}, {2, 3}),
      TensorFormat({2, 3, 2}, {1, 2, 3}),
  };
  for (const auto& fmt : fmts) {
    REQUIRE(fmt.ambient_dim() <= 10000);
    for (std::uint32_t c = 0; c < fmt.ambient_dim(); ++c) {
      auto exps = fmt.unpack(c);
      CHECK(fmt.pack(exps) == c);
    }
  }
}

TEST_CASE("coordinate names and parsing") {
  TensorFormat fmt({2, 3}, {2, 1});
  CHECK(fmt.coord_name(0) == "t[1,1|1]");
  for (std::uint32_t c = 0; c < fmt.ambient_dim(); ++c)
    CHECK(fmt.parse_coord(fmt.coord_name(c)) == c);
  TensorFormat seg = TensorFormat::segre({2, 2});
  CHECK(seg.coord_name(0) == "t[1|1]");
  CHECK(seg.coord_name(3) == "t[2|2]");
  CHECK_THROWS_AS(fmt.parse_coord("t[1|1]"), parse_error);
}

TEST_CASE("format literal round trip") {
  TensorFormat fmt({2, 3}, {2, 1});
  CHECK(fmt.to_string() == "dims=2,3 degrees=2,1");
  CHECK(TensorFormat::parse(fmt.to_string()) == fmt);
  CHECK(TensorFormat::parse("2,2,2") == TensorFormat::segre({2, 2, 2}));
}

TEST_CASE("coordinate weights") {
  TensorFormat fmt = TensorFormat::segre({3, 3});
  // t[1|2] has weight e1 in the first factor, e2 in the second.
  std::uint32_t c = fmt.parse_coord("t[1|2]");
  CHECK(fmt.coord_weight(c) == std::vector<int>{1, 0, 0, 0, 1, 0});
}

TEST_CASE("monomial order and arithmetic") {
  Monomial a = mono_from_coords({0, 0});  // x0^2
  Monomial b = mono_from_coords({0, 1});
  Monomial c = mono_from_coords({1, 1});
  CHECK(mono_less(a, b));
  CHECK(mono_less(b, c));
  CHECK(!mono_less(c, b));
  CHECK(mono_mul(a, b) == mono_from_coords({0, 0, 0, 1}));
  Monomial q;
  CHECK(mono_div(mono_mul(a, c), a, q));
  CHECK(q == c);
  CHECK(!mono_div(a, b, q));
}

TEST_CASE("degree-3 monomial count and order") {
  TensorFormat fmt = TensorFormat::segre({2, 2});
  auto monos = enumerate_monomials(fmt, 2);
  REQUIRE(monos.size() == 10);  // C(5,2)
  CHECK(monos[0] == mono_from_coords({0, 0}));
  CHECK(monos[1] == mono_from_coords({0, 1}));
  for (std::size_t i = 0; i + 1 < monos.size(); ++i) CHECK(mono_less(monos[i], monos[i + 1]));
  CHECK(count_monomials(TensorFormat::segre({2, 2, 2, 2}), 3) == 816);
}

TEST_CASE("monomial cap") {
  TensorFormat fmt = TensorFormat::segre({10, 10, 10});
  CHECK_THROWS_AS(enumerate_monomials(fmt, 5, 1000), cap_exceeded_error);
}

TEST_CASE("weight-zero enumeration matches the filter oracle") {
  struct Case {
    TensorFormat fmt;
    int delta;
  };
  std::vector<Case> cases = {
      {TensorFormat::segre({2, 2}), 2},   {TensorFormat::segre({3, 3}), 3},
      {TensorFormat::segre({2, 2, 2}), 2}, {TensorFormat({3}, {3}), 4},
      {TensorFormat({2, 3}, {2, 1}), 3},  {TensorFormat::segre({2, 2, 2, 2}), 4},
      {TensorFormat({2, 2}, {1, 2}), 4},
  };
  for (auto& [fmt, delta] : cases) {
    auto fast = enumerate_weight_zero(fmt, delta);
    auto slow = weight_zero_by_filter(fmt, delta);
    CHECK(fast == slow);
  }
}

TEST_CASE("weight-zero examples") {
  TensorFormat f22 = TensorFormat::segre({2, 2});
  auto wz = enumerate_weight_zero(f22, 2);
  REQUIRE(wz.size() == 2);  // t11*t22 and t12*t21
  CHECK(wz[0] == mono_from_coords({0, 3}));
  CHECK(wz[1] == mono_from_coords({1, 2}));

  TensorFormat f33 = TensorFormat::segre({3, 3});
  CHECK(enumerate_weight_zero(f33, 3).size() == 6);

  // Divisibility failure: no weight-zero monomials at all.
  TensorFormat f23 = TensorFormat::segre({2, 3});
  CHECK(!weight_zero_exists(f23, 2));
  CHECK(enumerate_weight_zero(f23, 2).empty());
}

TEST_CASE("weight additivity") {
  TensorFormat fmt({2, 3}, {2, 1});
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> ca, cb;
    for (int i = 0; i < 3; ++i) ca.push_back(static_cast<std::uint32_t>(rng.below(fmt.ambient_dim())));
    for (int i = 0; i < 2; ++i) cb.push_back(static_cast<std::uint32_t>(rng.below(fmt.ambient_dim())));
    Monomial a = mono_from_coords(ca), b = mono_from_coords(cb);
    auto wa = weight(fmt, a), wb = weight(fmt, b), wab = weight(fmt, mono_mul(a, b));
    for (std::size_t i = 0; i < wa.size(); ++i) CHECK(wab[i] == wa[i] + wb[i]);
  }
}

TEST_CASE("marginal totals equal delta times factor degree") {
  TensorFormat fmt({2, 3}, {3, 2});
  for (const Monomial& m : enumerate_monomials(fmt, 2)) {
    auto w = weight(fmt, m);
    for (int i = 0; i < fmt.factors(); ++i) {
      int tot = 0;
      for (int j = 0; j < fmt.dims()[i]; ++j) tot += w[fmt.weight_offset(i) + j];
      CHECK(tot == 2 * fmt.degrees()[i]);
    }
  }
}
