#include "tpres/interpolate.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tpres {

namespace {

std::vector<std::vector<int>> all_perms(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct GroupElement {
  std::vector<std::uint32_t> coord_map;  // image of each ambient coordinate
  int sign = 1;
};

// The symmetrization group: per-factor index permutations (weyl) and slot
// permutations of identical factors, with the mode's character.
std::vector<GroupElement> symmetry_group(const TensorFormat& fmt, int delta, WeylMode weyl,
                                         FactorMode factor) {
  int k = fmt.factors();
  std::uint32_t N = fmt.ambient_dim();

  // Bound the order before materializing any permutation list.
  Int order_bound = 1;
  if (weyl != WeylMode::raw)
    for (int i = 0; i < k; ++i) {
      Int f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(fmt.dims()[i]));
      order_bound *= f;
    }
  if (factor != FactorMode::none) {
    std::map<std::pair<int, int>, unsigned long> counts;
    for (int i = 0; i < k; ++i) ++counts[{fmt.dims()[i], fmt.degrees()[i]}];
    for (auto& [key, c] : counts) {
      Int f;
      mpz_fac_ui(f.get_mpz_t(), c);
      order_bound *= f;
    }
  }
  if (order_bound > 1'000'000) throw cap_exceeded_error("symmetrization group order");

  std::vector<std::vector<std::vector<int>>> weyl_choices(k);
  for (int i = 0; i < k; ++i) {
    if (weyl == WeylMode::raw) {
      std::vector<int> id(fmt.dims()[i]);
      for (int j = 0; j < fmt.dims()[i]; ++j) id[j] = j;
      weyl_choices[i] = {std::move(id)};
    } else {
      weyl_choices[i] = all_perms(fmt.dims()[i]);
    }
  }
  // Parity exponent of factor i under the alternating character.
  std::vector<int> parity_exp(k, 0);
  for (int i = 0; i < k; ++i) {
    long num = static_cast<long>(delta) * fmt.degrees()[i];
    if (num % fmt.dims()[i] != 0) return {};  // no weight-zero slice at all
    parity_exp[i] = static_cast<int>((num / fmt.dims()[i]) % 2);
  }

  // Factor-slot permutations within groups of equal (dim, degree).
  std::vector<std::vector<int>> slot_perms;
  if (factor == FactorMode::none) {
    std::vector<int> id(k);
    for (int i = 0; i < k; ++i) id[i] = i;
    slot_perms.push_back(id);
  } else {
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int i = 0; i < k; ++i) groups[{fmt.dims()[i], fmt.degrees()[i]}].push_back(i);
    slot_perms.assign(1, std::vector<int>(k));
    for (int i = 0; i < k; ++i) slot_perms[0][i] = i;
    for (auto& [key, members] : groups) {
      auto perms = all_perms(static_cast<int>(members.size()));
      std::vector<std::vector<int>> next;
      for (const auto& base : slot_perms)
        for (const auto& q : perms) {
          std::vector<int> tau = base;
          for (std::size_t t = 0; t < members.size(); ++t) tau[members[t]] = members[q[t]];
          next.push_back(std::move(tau));
        }
      slot_perms.swap(next);
    }
  }

  std::uint64_t order = slot_perms.size();
  for (int i = 0; i < k; ++i) order *= weyl_choices[i].size();
  if (order > 1'000'000) throw cap_exceeded_error("symmetrization group order");

  std::vector<GroupElement> out;
  out.reserve(order);
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    int wsign = 1;
    if (weyl == WeylMode::alternating)
      for (int i = 0; i < k; ++i)
        if (parity_exp[i] == 1 && permutation_sign(weyl_choices[i][pick[i]]) < 0) wsign = -wsign;
    for (const auto& tau : slot_perms) {
      GroupElement g;
      g.sign = wsign;
      if (factor == FactorMode::skew) g.sign *= permutation_sign(tau);
      g.coord_map.resize(N);
      for (std::uint32_t c = 0; c < N; ++c) {
        std::vector<FactorExp> exps = fmt.unpack(c);
        std::vector<FactorExp> image(k);
        for (int i = 0; i < k; ++i) {
          const auto& sigma = weyl_choices[i][pick[i]];
          FactorExp e2(fmt.dims()[i], 0);
          for (int j = 0; j < fmt.dims()[i]; ++j) e2[sigma[j]] = exps[i][j];
          image[tau[i]] = std::move(e2);
        }
        g.coord_map[c] = fmt.pack(image);
      }
      out.push_back(std::move(g));
    }
    int i = k - 1;
    while (i >= 0 && ++pick[i] == weyl_choices[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

Monomial apply_element(const GroupElement& g, const Monomial& m) {
  Monomial out;
  out.t.reserve(m.t.size());
  for (auto& [c, e] : m.t) out.t.emplace_back(g.coord_map[c], e);
  std::sort(out.t.begin(), out.t.end());
  return out;
}

}  // namespace

CandidateBasis build_candidate_basis(const TensorFormat& fmt, int delta, WeylMode weyl,
                                     FactorMode factor, const Caps& caps) {
  if (delta < 1) throw dimension_mismatch_error("candidate degree");
  CandidateBasis out;
  out.delta = delta;
  out.weyl = weyl;
  out.factor = factor;
  std::vector<Monomial> wz = enumerate_weight_zero(fmt, delta, caps.monomial_cap);
  if (wz.empty()) return out;

  std::vector<GroupElement> group = symmetry_group(fmt, delta, weyl, factor);
  std::unordered_map<Monomial, std::uint32_t, MonoHash> index;
  index.reserve(wz.size());
  for (std::uint32_t i = 0; i < wz.size(); ++i) index.emplace(wz[i], i);

  std::vector<char> seen(wz.size(), 0);
  for (std::uint32_t i = 0; i < wz.size(); ++i) {
    if (seen[i]) continue;
    std::unordered_map<Monomial, long, MonoHash> acc;
    for (const auto& g : group) {
      Monomial img = apply_element(g, wz[i]);
      acc[img] += g.sign;
      auto it = index.find(img);
      if (it == index.end()) throw certification_error("orbit left the weight-zero slice");
      seen[it->second] = 1;
    }
    std::vector<std::pair<Monomial, Rat>> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms.emplace_back(m, Rat(c));
    if (terms.empty()) continue;  // the character kills this orbit
    Poly p = poly_from_terms(delta, std::move(terms));
    poly_canonicalize(p);
    out.elements.push_back(std::move(p));
    if (out.elements.size() > caps.candidate_cap) throw cap_exceeded_error("candidate count");
  }
  return out;
}

namespace {

// Evaluation with per-point coordinate power tables; candidates share
// support so each monomial costs its coordinate count.
struct PointEvaluator {
  std::vector<std::vector<Rat>> pw;
  PointEvaluator(const std::vector<Rat>& pt, int delta) {
    pw.resize(pt.size());
    for (std::size_t c = 0; c < pt.size(); ++c) {
      pw[c].resize(static_cast<std::size_t>(delta) + 1);
      pw[c][0] = 1;
      for (int e = 1; e <= delta; ++e) pw[c][e] = pw[c][e - 1] * pt[c];
    }
  }
  Rat mono(const Monomial& m) const {
    Rat v(1);
    for (auto& [c, e] : m.t) v *= pw[c][e];
    return v;
  }
  Rat poly(const Poly& f) const {
    Rat v(0);
    for (auto& [m, c] : f.terms) v += c * mono(m);
    return v;
  }
};

}  // namespace

InterpolationResult interpolate_invariant(const TensorFormat& fmt, int delta, int r,
                                          WeylMode weyl, FactorMode factor,
                                          std::uint64_t seed, int margin, const Caps& caps) {
  if (margin < 1) margin = 1;
  InterpolationResult res;
  CandidateBasis basis = build_candidate_basis(fmt, delta, weyl, factor, caps);
  res.candidates = basis.elements.size();
  res.invariant.degree = delta;
  if (basis.elements.empty())
    throw verification_error("empty candidate basis at this degree");
  std::uint32_t c = static_cast<std::uint32_t>(basis.elements.size());

  Rng master(seed);
  std::vector<std::vector<Rat>> points;
  auto add_points = [&](int count) {
    for (int i = 0; i < count; ++i)
      points.push_back(sample_secant_point(fmt, r, master.next()));
  };
  add_points(static_cast<int>(c) + margin);
  Rng prime_rng(master.next());

  auto run = [&](const PrimeSet& ps) {
    std::vector<ModRref> rrefs;
    std::vector<bool> usable(ps.primes.size(), true);
    for (auto p : ps.primes) rrefs.emplace_back(c, p);
    for (const auto& pt : points) {
      PointEvaluator ev(pt, delta);
      QRow row;
      for (std::uint32_t j = 0; j < c; ++j) {
        Rat v = ev.poly(basis.elements[j]);
        if (v != 0) row.emplace_back(j, std::move(v));
      }
      for (std::size_t i = 0; i < rrefs.size(); ++i) {
        if (!usable[i]) continue;
        MRow mr;
        bool ok = true;
        for (auto& [col, val] : row) {
          std::uint64_t rv = rat_mod(val, rrefs[i].prime(), ok);
          if (!ok) break;
          if (rv != 0) mr.emplace_back(col, rv);
        }
        if (!ok)
          usable[i] = false;
        else
          rrefs[i].insert(std::move(mr));
      }
    }
    std::vector<ModRref> live;
    PrimeSet live_ps;
    for (std::size_t i = 0; i < rrefs.size(); ++i)
      if (usable[i]) {
        live.push_back(std::move(rrefs[i]));
        live_ps.primes.push_back(ps.primes[i]);
      }
    if (live.empty()) throw reconstruction_error("no usable prime");

    ModKernelResult ker = reconstruct_kernel(live, live_ps);
    res.kernel_dim = ker.dim();
    res.primes = live_ps.primes;
    res.samples = static_cast<int>(points.size());
    if (ker.dim() != 1) {
      res.invariant = Poly{};
      res.invariant.degree = delta;
      return;
    }
    std::vector<std::pair<Monomial, Rat>> terms;
    for (auto& [j, coeff] : ker.kernel.front())
      for (auto& [m, cf] : basis.elements[j].terms) terms.emplace_back(m, coeff * cf);
    Poly f = poly_from_terms(delta, std::move(terms));
    poly_canonicalize(f);
    if (f.is_zero()) throw certification_error("interpolated polynomial collapsed");
    for (const auto& [m, cf] : f.terms)
      if (!is_weight_zero(fmt, delta, m))
        throw certification_error("interpolated polynomial left the weight-zero slice");
    // Exact closure of the modular solve: vanish on every sample used.
    for (const auto& pt : points) {
      PointEvaluator ev(pt, delta);
      if (ev.poly(f) != 0)
        throw certification_error("interpolated polynomial failed an exact sample");
    }
    res.invariant = std::move(f);
  };

  const int prime_plan[] = {3, 5, 8};
  // A second round with half again as many samples guards the honest
  // kernel-dimension report against an undersampled matrix.
  for (int round = 0; round < 2; ++round) {
    bool solved = false;
    for (int attempt = 0; attempt < 3 && !solved; ++attempt) {
      PrimeSet ps = PrimeSet::random_31bit(prime_plan[attempt], prime_rng);
      try {
        run(ps);
        solved = true;
      } catch (const reconstruction_error&) {
      } catch (const certification_error&) {
      }
    }
    if (!solved) throw certification_error("interpolation not certifiable with the prime budget");
    if (res.kernel_dim == 1 || round == 1) break;
    if (res.kernel_dim == 0) break;
    add_points(static_cast<int>(c) / 2 + margin);
  }
  if (res.kernel_dim == 0)
    throw verification_error("no invariant in the candidate space at this degree");
  if (res.kernel_dim > 1)
    throw verification_error("kernel dimension " + std::to_string(res.kernel_dim) + " with " +
                             std::to_string(res.candidates) +
                             " candidates: insufficient samples or reducible candidate space");
  res.verification = verify_invariant(fmt, res.invariant, r, master.next(), caps);
  if (!res.verification.ok())
    throw verification_error("interpolated invariant failed the verification battery");
  return res;
}

VerificationReport verify_invariant(const TensorFormat& fmt, const Poly& f, int r,
                                    std::uint64_t seed, const Caps& caps) {
  (void)caps;
  if (f.is_zero()) throw dimension_mismatch_error("verifying the zero polynomial");
  VerificationReport rep;
  Rng master(seed);

  rep.vanish_trials = 100;
  rep.vanish_ok = true;
  for (int t = 0; t < rep.vanish_trials; ++t) {
    PointEvaluator ev(sample_secant_point(fmt, r, master.next()), f.degree);
    if (ev.poly(f) != 0) {
      rep.vanish_ok = false;
      break;
    }
  }

  // Zero hits at a random integer point are resampled, up to a fixed budget.
  Rng nz(master.next());
  for (int t = 0; t < 100 && rep.nonvanish_hits < 10; ++t) {
    std::vector<Rat> pt(fmt.ambient_dim());
    for (auto& x : pt) x = Rat(nz.symmetric(10));
    PointEvaluator ev(pt, f.degree);
    if (ev.poly(f) != 0) ++rep.nonvanish_hits;
  }
  rep.nonvanish_ok = rep.nonvanish_hits >= 10;

  // Each trial applies one random elementary transvection on every factor of
  // dimension at least 2 and checks evaluation equality at a random point.
  Rng sl(master.next());
  rep.sl_ok = true;
  bool any_big = false;
  for (int i = 0; i < fmt.factors(); ++i)
    if (fmt.dims()[i] >= 2) any_big = true;
  if (any_big) {
    rep.sl_trials = 20;
    for (int t = 0; t < rep.sl_trials && rep.sl_ok; ++t) {
      std::vector<DenseMat> gs;
      gs.reserve(static_cast<std::size_t>(fmt.factors()));
      for (int i = 0; i < fmt.factors(); ++i) {
        int n = fmt.dims()[i];
        DenseMat g = dense_identity(n);
        if (n >= 2) {
          int a = static_cast<int>(sl.below(static_cast<std::uint64_t>(n)));
          int b = static_cast<int>(sl.below(static_cast<std::uint64_t>(n - 1)));
          if (b >= a) ++b;
          long cval = 0;
          while (cval == 0) cval = sl.symmetric(5);
          g[a][b] = Rat(cval);
        }
        gs.push_back(std::move(g));
      }
      RatMat M = ambient_substitution(fmt, gs);
      std::vector<Rat> pt(fmt.ambient_dim());
      for (auto& x : pt) x = Rat(sl.symmetric(10));
      PointEvaluator base(pt, f.degree);
      PointEvaluator moved(apply_matrix(M, pt), f.degree);
      if (moved.poly(f) != base.poly(f)) rep.sl_ok = false;
    }
  }
  return rep;
}

}  // namespace tpres
