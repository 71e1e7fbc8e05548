// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every numeric expectation is pinned exactly; timings gate at the stated
// budgets. The long-running interpolation pair lives in acceptance_stretch.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_helpers.hpp"
#include "tpres/equations.hpp"
#include "tpres/interpolate.hpp"
#include "tpres/stabilizer.hpp"

using namespace tpres;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
  std::printf("criterion %d (%s): %s [%.1f s]%s%s\n", number, name.c_str(),
              pass ? "PASS" : "FAIL", seconds, detail.empty() ? "" : " ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run_criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string("exception: ") + e.what();
    pass = false;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (pass && secs > budget_seconds) {
    pass = false;
    detail += " over time budget";
  }
  report(number, name, pass, secs, detail);
}

bool expect(bool cond, const std::string& what, std::string& detail) {
  if (!cond) detail += (detail.empty() ? "" : "; ") + what;
  return cond;
}

Poly det3_poly() {
  TensorFormat fmt = TensorFormat::segre({3, 3});
  FlatteningMatrix F = flattening(fmt, shape_from_bipartition(fmt, Bipartition::from_left(2, {0})));
  Poly d = minors(F, 3).at(0);
  poly_canonicalize(d);
  return d;
}

bool samples_vanish(const TensorFormat& fmt, int r, const LinearSubspace& I, int trials,
                    std::uint64_t seed0) {
  for (int t = 0; t < trials; ++t) {
    std::vector<Rat> pt = sample_secant_point(fmt, r, seed0 + static_cast<std::uint64_t>(t));
    for (std::uint32_t j = 0; j < I.dim(); ++j)
      if (evaluate(I[j], pt) != 0) return false;
  }
  return true;
}

struct StabCase {
  std::string label;
  TensorFormat fmt;
  int r;
  std::uint32_t dim;
  double budget;
};

// Shared with criterion 8: bracket closure of every stabilizer output.
bool g_all_brackets_closed = true;

}  // namespace

int main() {
  run_criterion(1, "bound suite", 4.0, [](std::string& detail) {
    bool ok = true;
    const std::vector<std::pair<std::vector<int>, long>> cases = {
        {{2, 2, 2}, 2}, {{2, 2, 2, 2}, 4}, {{2, 3, 4}, 3}, {{3, 3, 3, 3}, 9}};
    for (const auto& [dims, expected] : cases) {
      auto t0 = std::chrono::steady_clock::now();
      BoundResult b = s_of_n(dims);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::ostringstream name;
      name << "s(";
      for (std::size_t i = 0; i < dims.size(); ++i) name << (i ? "," : "") << dims[i];
      name << ")";
      ok &= expect(b.s == expected, name.str() + " value", detail);
      ok &= expect(b.s == tpres_test::s_of_n_bruteforce(dims), name.str() + " oracle", detail);
      ok &= expect(b.r_max == b.s - 1, name.str() + " r_max", detail);
      ok &= expect(is_separating(static_cast<int>(dims.size()), b.witness),
                   name.str() + " witness", detail);
      ok &= expect(secs < 1.0, name.str() + " under 1 s", detail);
    }
    return ok;
  });

  run_criterion(2, "prolongation oracle", 5.0, [](std::string& detail) {
    TensorFormat f33 = TensorFormat::segre({3, 3});
    LinearSubspace P = prolongation(segre_degree2_component(f33), 1, f33);
    bool ok = expect(P.dim() == 1, "nine-minor prolongation dim", detail);
    ok &= expect(P.same_span(echelonize({det3_poly()}, 3)), "equals det3", detail);
    TensorFormat f22 = TensorFormat::segre({2, 2});
    ok &= expect(prolongation(segre_degree2_component(f22), 1, f22).dim() == 0,
                 "det2 prolongation is zero", detail);
    return ok;
  });

  run_criterion(3, "stabilizer dimensions", 2800.0, [](std::string& detail) {
    const std::vector<StabCase> cases = {
        {"det2", TensorFormat::segre({2, 2}), 1, 7, 60.0},
        {"segre 2x2x2", TensorFormat::segre({2, 2, 2}), 1, 10, 60.0},
        {"sigma2 2^4", TensorFormat::segre({2, 2, 2, 2}), 2, 13, 60.0},
        {"sigma2 2,2,2,3", TensorFormat::segre({2, 2, 2, 3}), 2, 18, 60.0},
        {"sigma2 2,2,3,3", TensorFormat::segre({2, 2, 3, 3}), 2, 23, 1200.0},
        {"sigma3 2^4", TensorFormat::segre({2, 2, 2, 2}), 3, 13, 60.0},
        {"sigma2 2^5", TensorFormat::segre({2, 2, 2, 2, 2}), 2, 16, 1200.0},
    };
    bool ok = true;
    for (const auto& c : cases) {
      auto t0 = std::chrono::steady_clock::now();
      LinearSubspace I = c.r == 1 ? segre_degree2_component(c.fmt)
                                  : secant_degree_component(c.fmt, c.r);
      if (c.label == "sigma3 2^4")
        ok &= expect(I.dim() == 2, c.label + " input dim 2", detail);
      StabilizerResult stab = lie_annihilator(c.fmt, I);
      PreserverReport rep = preserver_verdict(c.fmt, stab);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ok &= expect(stab.dim == c.dim, c.label + " dim", detail);
      ok &= expect(rep.verdict == Verdict::expected, c.label + " verdict", detail);
      bool closed = bracket_closed(stab.basis);
      g_all_brackets_closed &= closed;
      ok &= expect(closed, c.label + " bracket", detail);
      ok &= expect(samples_vanish(c.fmt, c.r, I, 100, 1000 + c.dim),
                   c.label + " minors vanish on 100 samples", detail);
      ok &= expect(secs < c.budget, c.label + " within budget", detail);
    }
    return ok;
  });

  run_criterion(4, "counterexample detection", 300.0, [](std::string& detail) {
    TensorFormat fmt = TensorFormat::segre({2, 2, 5});
    StabilizerResult stab = lie_annihilator(fmt, secant_degree_component(fmt, 2));
    PreserverReport rep = preserver_verdict(fmt, stab);
    g_all_brackets_closed &= bracket_closed(stab.basis);
    bool ok = expect(stab.dim == 40, "dim 40", detail);
    ok &= expect(rep.expected_dim == 31, "expected 31", detail);
    ok &= expect(rep.verdict == Verdict::larger_than_expected, "verdict", detail);
    ok &= expect(rep.merged_dims == std::vector<int>{4, 5}, "merged (4,5)", detail);
    return ok;
  });

  run_criterion(5, "det3 interpolation", 10.0, [](std::string& detail) {
    TensorFormat fmt = TensorFormat::segre({3, 3});
    InterpolationResult res =
        interpolate_invariant(fmt, 3, 2, WeylMode::raw, FactorMode::none, 11);
    bool ok = expect(res.candidates == 6, "weight-zero dimension 6", detail);
    ok &= expect(res.kernel_dim == 1, "kernel dimension 1", detail);
    ok &= expect(poly_equal(res.invariant, det3_poly()), "equals det3 up to sign", detail);
    ok &= expect(res.verification.ok(), "verification battery", detail);
    return ok;
  });

  run_criterion(6, "aronhold pipeline", 300.0, [](std::string& detail) {
    TensorFormat fmt({3}, {3});
    InterpolationResult res =
        interpolate_invariant(fmt, 4, 3, WeylMode::raw, FactorMode::none, 11);
    bool ok = expect(res.kernel_dim == 1, "kernel dimension 1", detail);
    ok &= expect(res.verification.vanish_trials == 100 && res.verification.vanish_ok,
                 "vanishes on 100 rank-3 samples", detail);
    ok &= expect(res.verification.nonvanish_ok, "nonzero on random cubics", detail);
    ok &= expect(res.verification.sl_trials == 20 && res.verification.sl_ok,
                 "SL3 invariance on 20 exact trials", detail);
    StabilizerResult stab = stabilize_single_invariant(fmt, res.invariant);
    g_all_brackets_closed &= bracket_closed(stab.basis);
    ok &= expect(stab.dim == 9, "stabilizer dim 9", detail);
    return ok;
  });

  std::printf("criterion 7 (stretch interpolations): run the acceptance_stretch binary\n");
  std::fflush(stdout);

  run_criterion(8, "property suites", 600.0, [](std::string& detail) {
    bool ok = true;

    // Leibniz rule for lie_action over random operators and factors.
    {
      TensorFormat fmt = TensorFormat::segre({2, 3});
      std::uint32_t N = fmt.ambient_dim();
      Rng rng(20240816);
      bool leibniz = true;
      for (int t = 0; t < 1000 && leibniz; ++t) {
        RatMat A(N);
        for (int e = 0; e < 3; ++e)
          A.add(static_cast<std::uint32_t>(rng.below(N)), static_cast<std::uint32_t>(rng.below(N)),
                Rat(rng.symmetric(4)));
        auto rand_poly = [&](int deg) {
          std::vector<std::pair<Monomial, Rat>> terms;
          for (int s = 0; s < 3; ++s) {
            Monomial m;
            for (int d = 0; d < deg; ++d) {
              Monomial x;
              x.t.emplace_back(static_cast<std::uint32_t>(rng.below(N)), 1);
              m = mono_mul(m, x);
            }
            terms.emplace_back(std::move(m), Rat(rng.symmetric(5)));
          }
          return poly_from_terms(deg, std::move(terms));
        };
        Poly f = rand_poly(2), g = rand_poly(1);
        if (f.is_zero() || g.is_zero()) continue;
        Poly lhs = lie_action(A, poly_mul(f, g));
        Poly rhs = poly_add(poly_mul(lie_action(A, f), g), poly_mul(f, lie_action(A, g)));
        leibniz = poly_equal(lhs, rhs);
      }
      ok &= expect(leibniz, "Leibniz rule (1000 trials)", detail);
    }

    // Bracket closure held on every stabilizer output of this run.
    ok &= expect(g_all_brackets_closed, "bracket closure on all stabilizer outputs", detail);

    // Basis-change invariance: five random per-factor conjugations of the
    // degree-2 component of the three-factor binary Segre.
    {
      TensorFormat fmt = TensorFormat::segre({2, 2, 2});
      LinearSubspace I2 = segre_degree2_component(fmt);
      Rng rng(4242);
      bool invariant_dim = true;
      for (int trial = 0; trial < 5 && invariant_dim; ++trial) {
        std::vector<DenseMat> gs;
        for (int i = 0; i < 3; ++i) {
          DenseMat g;
          do {
            g.assign(2, std::vector<Rat>(2));
            for (auto& row : g)
              for (auto& x : row) x = Rat(rng.symmetric(4));
          } while (dense_det(g) == 0);
          gs.push_back(std::move(g));
        }
        RatMat M = ambient_substitution(fmt, gs);
        std::vector<Poly> moved;
        for (std::uint32_t j = 0; j < I2.dim(); ++j) moved.push_back(substitute(I2[j], M));
        StabilizerResult stab = lie_annihilator(fmt, echelonize(moved, 2));
        g_all_brackets_closed &= bracket_closed(stab.basis);
        invariant_dim = stab.dim == 10;
      }
      ok &= expect(invariant_dim, "5 conjugations keep dim 10", detail);

      TensorFormat f4 = TensorFormat::segre({2, 2, 2, 2});
      LinearSubspace I3 = secant_degree_component(f4, 2);
      std::vector<DenseMat> gs;
      for (int i = 0; i < 4; ++i) {
        DenseMat g;
        do {
          g.assign(2, std::vector<Rat>(2));
          for (auto& row : g)
            for (auto& x : row) x = Rat(rng.symmetric(3));
        } while (dense_det(g) == 0);
        gs.push_back(std::move(g));
      }
      RatMat M = ambient_substitution(f4, gs);
      std::vector<Poly> moved;
      for (std::uint32_t j = 0; j < I3.dim(); ++j) moved.push_back(substitute(I3[j], M));
      StabilizerResult stab = lie_annihilator(f4, echelonize(moved, 3));
      ok &= expect(stab.dim == 13, "conjugated sigma2 2^4 keeps dim 13", detail);
    }

    // Seed independence of the canonical det3 interpolation.
    {
      TensorFormat fmt = TensorFormat::segre({3, 3});
      InterpolationResult a =
          interpolate_invariant(fmt, 3, 2, WeylMode::raw, FactorMode::none, 11);
      InterpolationResult b =
          interpolate_invariant(fmt, 3, 2, WeylMode::raw, FactorMode::none, 987654321);
      ok &= expect(poly_equal(a.invariant, b.invariant), "det3 seed independence", detail);
    }

    return ok;
  });

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
