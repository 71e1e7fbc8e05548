#include "tpres/stabilizer.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace tpres {

namespace {

QRow flatten_mat(const RatMat& A) {
  QRow r;
  for (auto& [u, v, val] : A.entries())
    r.emplace_back(u * A.n() + v, val);
  std::sort(r.begin(), r.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

// One full annihilator solve against a fixed prime set. Rows are grouped by
// the weight shift w(u) - w(v) of their unknowns; each group is assembled
// exactly, reduced mod every usable prime, and discarded.
StabilizerResult solve_once(const TensorFormat& fmt, const LinearSubspace& I,
                            const PrimeSet& ps, const Caps& caps) {
  std::uint32_t N = fmt.ambient_dim();
  std::uint64_t cols64 = static_cast<std::uint64_t>(N) * N;
  if (cols64 > 0xffffffffULL || cols64 > caps.row_cap)
    throw cap_exceeded_error("stabilizer unknown count");
  std::uint32_t cols = static_cast<std::uint32_t>(cols64);

  // The per-shift batching below is only a memory optimization, and it is
  // only sound when every basis element is weight homogeneous: then a row
  // keyed by (j, residual monomial) receives contributions from exactly one
  // shift. A general component (e.g. after an ambient basis change) must be
  // assembled as a single group so rows stay whole.
  bool homogeneous = true;
  for (std::uint32_t j = 0; j < I.dim() && homogeneous; ++j) {
    const auto& ts = I[j].terms;
    for (std::size_t t = 1; t < ts.size() && homogeneous; ++t)
      if (weight(fmt, ts[t].first) != weight(fmt, ts[0].first)) homogeneous = false;
  }

  std::vector<std::vector<int>> w(N);
  for (std::uint32_t c = 0; c < N; ++c) w[c] = fmt.coord_weight(c);
  std::map<std::vector<int>, std::vector<std::pair<std::uint32_t, std::uint32_t>>> groups;
  std::vector<int> shift(fmt.weight_len());
  for (std::uint32_t u = 0; u < N; ++u)
    for (std::uint32_t v = 0; v < N; ++v) {
      if (homogeneous)
        for (int t = 0; t < fmt.weight_len(); ++t) shift[t] = w[u][t] - w[v][t];
      groups[shift].emplace_back(u, v);
    }

  std::vector<ModRref> rrefs;
  std::vector<bool> usable(ps.primes.size(), true);
  rrefs.reserve(ps.primes.size());
  for (auto p : ps.primes) rrefs.emplace_back(cols, p);

  // dv[v][j] = d f_j / d x_v, shared across all (u, v) unknowns.
  std::vector<std::vector<Poly>> dv(N, std::vector<Poly>(I.dim()));
  for (std::uint32_t v = 0; v < N; ++v) {
    Monomial xv;
    xv.t.emplace_back(v, 1);
    for (std::uint32_t j = 0; j < I.dim(); ++j) dv[v][j] = contract_mono(xv, I[j]);
  }

  std::uint64_t rows_seen = 0;
  for (auto& [sh, pairs] : groups) {
    // Row key: (basis index, residual monomial). Ordered for determinism.
    std::map<std::pair<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>, QRow>
        rows;
    for (auto& [u, v] : pairs) {
      Monomial xu;
      xu.t.emplace_back(u, 1);
      std::uint32_t col = u * N + v;
      for (std::uint32_t j = 0; j < I.dim(); ++j) {
        if (dv[v][j].is_zero()) continue;
        std::vector<std::pair<Monomial, Rat>> terms;
        terms.reserve(dv[v][j].terms.size());
        for (auto& [m, c] : dv[v][j].terms) terms.emplace_back(mono_mul(m, xu), c);
        Poly r = I.reduce(poly_from_terms(I.degree(), std::move(terms)));
        for (auto& [m, c] : r.terms) rows[{j, m.t}].emplace_back(col, c);
      }
    }
    rows_seen += rows.size();
    if (rows_seen > caps.row_cap) throw cap_exceeded_error("stabilizer rows");
    for (auto& [key, qr] : rows)
      for (std::size_t i = 0; i < rrefs.size(); ++i) {
        if (!usable[i]) continue;
        MRow mr;
        mr.reserve(qr.size());
        bool ok = true;
        for (auto& [c, val] : qr) {
          std::uint64_t rv = rat_mod(val, rrefs[i].prime(), ok);
          if (!ok) break;
          if (rv != 0) mr.emplace_back(c, rv);
        }
        if (!ok) {
          usable[i] = false;
          continue;
        }
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

  StabilizerResult out;
  out.dim = ker.dim();
  out.primes = live_ps.primes;
  out.basis.reserve(ker.kernel.size());
  for (const auto& vec : ker.kernel) {
    RatMat A(N);
    for (auto& [c, val] : vec) A.add(c / N, c % N, val);
    out.basis.push_back(std::move(A));
  }
  // Exact certification: every reconstructed matrix must send every basis
  // element back into the component.
  for (const auto& A : out.basis)
    for (std::uint32_t j = 0; j < I.dim(); ++j)
      if (!I.contains(lie_action(A, I[j])))
        throw certification_error("stabilizer basis failed exact re-verification");

  std::vector<RatMat> expected = expected_lie_basis(fmt);
  out.contains_expected = true;
  for (const auto& E : expected) {
    bool ann = true;
    for (std::uint32_t j = 0; j < I.dim() && ann; ++j)
      if (!I.contains(lie_action(E, I[j]))) ann = false;
    if (!ann) {
      out.contains_expected = false;
      break;
    }
  }
  RowSpace span(cols);
  for (const auto& E : expected) span.insert(flatten_mat(E));
  out.expected_rank = span.dim();
  out.equals_expected = out.contains_expected && out.dim == out.expected_rank;
  return out;
}

}  // namespace

StabilizerResult lie_annihilator(const TensorFormat& fmt, const LinearSubspace& I,
                                 std::uint64_t prime_seed, const Caps& caps,
                                 const std::vector<std::uint64_t>* explicit_primes) {
  if (I.dim() == 0) throw dimension_mismatch_error("stabilizer of a zero component");
  for (std::uint32_t j = 0; j < I.dim(); ++j)
    if (I[j].degree != I.degree()) throw degree_mismatch_error("component degree");
  if (explicit_primes) {
    PrimeSet ps;
    ps.primes = *explicit_primes;
    return solve_once(fmt, I, ps, caps);
  }
  Rng rng(prime_seed);
  const int plan[] = {3, 5, 8};
  for (int attempt = 0; attempt < 3; ++attempt) {
    PrimeSet ps = PrimeSet::random_31bit(plan[attempt], rng);
    try {
      return solve_once(fmt, I, ps, caps);
    } catch (const reconstruction_error&) {
    } catch (const certification_error&) {
    }
  }
  throw certification_error("stabilizer kernel not certifiable with the prime budget");
}

StabilizerResult stabilize_single_invariant(const TensorFormat& fmt, const Poly& f,
                                            std::uint64_t prime_seed, const Caps& caps) {
  if (f.is_zero()) throw dimension_mismatch_error("stabilizer of the zero polynomial");
  return lie_annihilator(fmt, echelonize({f}, f.degree), prime_seed, caps);
}

bool bracket_closed(const std::vector<RatMat>& basis) {
  if (basis.empty()) return true;
  std::uint32_t N = basis.front().n();
  RowSpace span(N * N);
  for (const auto& A : basis) span.insert(flatten_mat(A));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      RatMat ab = mat_mul(basis[i], basis[j]);
      RatMat ba = mat_mul(basis[j], basis[i]);
      for (auto& [u, v, val] : ba.entries()) ab.add(u, v, -val);
      if (!span.contains(flatten_mat(ab))) return false;
    }
  return true;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::expected:
      return "expected";
    case Verdict::larger_than_expected:
      return "larger_than_expected";
    default:
      return "inconclusive";
  }
}

namespace {

// Set partitions of {0..k-1} by restricted growth strings, coarser blocks
// only over degree-1 factors.
void enumerate_partitions(int k, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<int> rgs(k, 0);
  while (true) {
    int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> part(blocks);
    for (int i = 0; i < k; ++i) part[rgs[i]].push_back(i);
    out.push_back(std::move(part));
    int i = k - 1;
    while (i > 0) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) break;
      rgs[i--] = 0;
    }
    if (i == 0) break;
    ++rgs[i];
  }
}

}  // namespace

PreserverReport preserver_verdict(const TensorFormat& fmt, const StabilizerResult& stab,
                                  const std::vector<std::vector<int>>* merged_candidates) {
  PreserverReport rep;
  rep.expected_dim = expected_preserver_dim(fmt.dims());
  Int dim(static_cast<unsigned long>(stab.dim));
  if (dim == rep.expected_dim && stab.equals_expected) {
    rep.verdict = Verdict::expected;
    rep.inference =
        "annihilator equals the product of the factor Lie algebras plus scalings; "
        "the identity component of the preserver is the product group, and the full "
        "preserver can extend it only by permutations of factors with equal "
        "dimension and degree";
    return rep;
  }
  if (dim < rep.expected_dim || !stab.contains_expected) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  rep.verdict = Verdict::larger_than_expected;

  if (merged_candidates) {
    for (const auto& cand : *merged_candidates)
      if (!cand.empty() && expected_preserver_dim(cand) == dim) {
        rep.merged_dims = cand;
        return rep;
      }
  }

  int k = fmt.factors();
  std::vector<std::vector<std::vector<int>>> parts;
  enumerate_partitions(k, parts);
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& part : parts) {
    if (static_cast<int>(part.size()) == k) continue;  // finest = expected case
    bool valid = true;
    std::vector<int> mdims;
    for (const auto& block : part) {
      long prod = 1;
      for (int i : block) {
        if (block.size() > 1 && fmt.degrees()[i] != 1) valid = false;
        prod *= fmt.dims()[i];
      }
      if (prod > 1'000'000) valid = false;
      mdims.push_back(static_cast<int>(prod));
    }
    if (!valid) continue;
    if (expected_preserver_dim(mdims) == dim) {
      rep.merged_blocks = part;
      rep.merged_dims = mdims;
      break;
    }
  }
  return rep;
}

}  // namespace tpres
