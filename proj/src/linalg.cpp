#include "tpres/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tpres {

void SparseMatrix::add_row(QRow r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  QRow clean;
  for (auto& [c, v] : r) {
    if (c >= cols) throw dimension_mismatch_error("row entry beyond column count");
    if (v == 0) continue;
    if (!clean.empty() && clean.back().first == c)
      clean.back().second += v;
    else
      clean.emplace_back(c, v);
    if (clean.back().second == 0) clean.pop_back();
  }
  rows.push_back(std::move(clean));
}

namespace {

using ZRow = std::vector<std::pair<std::uint32_t, Int>>;

ZRow integerize(const QRow& q) {
  Int den = 1;
  for (auto& [c, v] : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den().get_mpz_t());
  ZRow z;
  z.reserve(q.size());
  Int content = 0;
  for (auto& [c, v] : q) {
    Int val = v.get_num() * (den / v.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), val.get_mpz_t());
    z.emplace_back(c, std::move(val));
  }
  if (content > 1)
    for (auto& [c, v] : z) v /= content;
  return z;
}

void strip_content(ZRow& r) {
  Int g = 0;
  for (auto& [c, v] : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& [c, v] : r) v /= g;
}

// dst*a - src*b, fraction-free; dst and src share their leading column,
// which cancels. Content-stripped afterwards.
ZRow row_combine(const ZRow& dst, const Int& a, const ZRow& src, const Int& b) {
  ZRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.emplace_back(dst[i].first, dst[i].second * a);
      ++i;
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -src[j].second * b);
      ++j;
    } else {
      Int v = dst[i].second * a - src[j].second * b;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  strip_content(out);
  return out;
}

struct EchelonQ {
  // Monic RREF rows over Q keyed by pivot column.
  std::vector<QRow> rows;
  std::vector<std::uint32_t> pivots;
};

// Forward fraction-free elimination with the deterministic pivot rule, then
// rational back-elimination to RREF.
EchelonQ eliminate(const SparseMatrix& M) {
  struct Pending {
    ZRow row;
    std::size_t id;
  };
  std::map<std::uint32_t, std::vector<Pending>> buckets;
  std::size_t next_id = 0;
  auto push = [&](ZRow r) {
    if (!r.empty()) buckets[r.front().first].push_back({std::move(r), next_id++});
  };
  for (const QRow& q : M.rows) push(integerize(q));

  std::vector<std::pair<std::uint32_t, ZRow>> pivot_rows;
  while (!buckets.empty()) {
    auto it = buckets.begin();
    std::uint32_t col = it->first;
    std::vector<Pending> group = std::move(it->second);
    buckets.erase(it);
    // Pivot: sparsest row, ties to the earliest inserted.
    std::size_t best = 0;
    for (std::size_t i = 1; i < group.size(); ++i) {
      if (group[i].row.size() < group[best].row.size() ||
          (group[i].row.size() == group[best].row.size() && group[i].id < group[best].id))
        best = i;
    }
    ZRow pivot = std::move(group[best].row);
    const Int pa = pivot.front().second;
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i == best) continue;
      ZRow r = row_combine(group[i].row, pa, pivot, group[i].row.front().second);
      if (!r.empty()) buckets[r.front().first].push_back({std::move(r), group[i].id});
    }
    pivot_rows.emplace_back(col, std::move(pivot));
  }

  EchelonQ ech;
  ech.rows.reserve(pivot_rows.size());
  for (auto& [col, zr] : pivot_rows) {
    QRow q;
    q.reserve(zr.size());
    Rat inv(1, zr.front().second);
    inv.canonicalize();
    for (auto& [c, v] : zr) q.emplace_back(c, Rat(v) * inv);
    ech.pivots.push_back(col);
    ech.rows.push_back(std::move(q));
  }
  // pivot_rows emerged in ascending column order already (buckets are a
  // sorted map and eliminations only move rows to larger columns).
  for (std::size_t i = ech.rows.size(); i-- > 0;) {
    // Clear pivot i's column from all earlier rows.
    std::uint32_t pc = ech.pivots[i];
    for (std::size_t j = 0; j < i; ++j) {
      QRow& r = ech.rows[j];
      auto pos = std::lower_bound(r.begin(), r.end(), pc,
                                  [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (pos == r.end() || pos->first != pc) continue;
      Rat coef = pos->second;
      QRow out;
      out.reserve(r.size() + ech.rows[i].size());
      std::size_t a = 0, b = 0;
      const QRow& s = ech.rows[i];
      while (a < r.size() || b < s.size()) {
        if (b == s.size() || (a < r.size() && r[a].first < s[b].first)) {
          out.push_back(r[a++]);
        } else if (a == r.size() || s[b].first < r[a].first) {
          out.emplace_back(s[b].first, -coef * s[b].second);
          ++b;
        } else {
          Rat v = r[a].second - coef * s[b].second;
          if (v != 0) out.emplace_back(r[a].first, std::move(v));
          ++a;
          ++b;
        }
      }
      r = std::move(out);
    }
  }
  return ech;
}

}  // namespace

void qrow_axpy(QRow& dst, const Rat& c, const QRow& src) {
  if (c == 0 || src.empty()) return;
  QRow out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, c * src[j].second);
      ++j;
    } else {
      Rat v = dst[i].second + c * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst.swap(out);
}

bool RowSpace::insert(QRow r) {
  r = reduce(std::move(r));
  if (r.empty()) return false;
  // Monic on the leading column, then eliminate that column everywhere.
  Rat inv = 1 / r.front().second;
  for (auto& [c, v] : r) v *= inv;
  std::uint32_t piv = r.front().first;
  for (auto& row : rows_) {
    const Rat* hit = nullptr;
    for (auto& [c, v] : row)
      if (c == piv) {
        hit = &v;
        break;
      }
    if (hit) qrow_axpy(row, -*hit, r);
  }
  pivot_of_col_[piv] = rows_.size();
  rows_.push_back(std::move(r));
  return true;
}

QRow RowSpace::reduce(QRow r) const {
  for (auto& [c, v] : r)
    if (c >= cols_) throw dimension_mismatch_error("row space column out of range");
  // Stored rows carry no pivot column but their own, so eliminating the
  // front whenever it is a pivot fully clears every pivot column.
  QRow out;
  while (!r.empty()) {
    auto it = pivot_of_col_.find(r.front().first);
    if (it == pivot_of_col_.end()) {
      out.push_back(r.front());
      r.erase(r.begin());
    } else {
      qrow_axpy(r, -r.front().second, rows_[it->second]);
    }
  }
  return out;
}

std::uint32_t rank_exact(const SparseMatrix& M) {
  return static_cast<std::uint32_t>(eliminate(M).pivots.size());
}

NullspaceResult nullspace_exact(const SparseMatrix& M) {
  EchelonQ ech = eliminate(M);
  NullspaceResult res;
  res.cols = M.cols;
  res.pivot_cols = ech.pivots;
  std::unordered_set<std::uint32_t> pivot_set(ech.pivots.begin(), ech.pivots.end());

  // Index of rows by columns in their support, for targeted verification.
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> rows_touching;
  for (std::size_t r = 0; r < M.rows.size(); ++r)
    for (auto& [c, v] : M.rows[r]) rows_touching[c].push_back(r);

  for (std::uint32_t f = 0; f < M.cols; ++f) {
    if (pivot_set.count(f)) continue;
    QRow v;
    v.emplace_back(f, 1);
    for (std::size_t i = 0; i < ech.rows.size(); ++i) {
      auto pos = std::lower_bound(ech.rows[i].begin(), ech.rows[i].end(), f,
                                  [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (pos != ech.rows[i].end() && pos->first == f)
        v.emplace_back(ech.pivots[i], -pos->second);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Exact re-verification of M * v = 0, restricted to rows meeting v.
    std::unordered_set<std::size_t> cand;
    for (auto& [c, val] : v) {
      auto it = rows_touching.find(c);
      if (it == rows_touching.end()) continue;
      cand.insert(it->second.begin(), it->second.end());
    }
    for (std::size_t r : cand) {
      Rat dot = 0;
      const QRow& row = M.rows[r];
      std::size_t a = 0, b = 0;
      while (a < row.size() && b < v.size()) {
        if (row[a].first < v[b].first)
          ++a;
        else if (v[b].first < row[a].first)
          ++b;
        else {
          dot += row[a].second * v[b].second;
          ++a;
          ++b;
        }
      }
      if (dot != 0)
        throw certification_error("exact nullspace verification failed");
    }
    res.kernel.push_back(std::move(v));
  }
  return res;
}

PrimeSet PrimeSet::random_31bit(int count, Rng& rng) {
  PrimeSet ps;
  while (static_cast<int>(ps.primes.size()) < count) {
    std::uint64_t lo = 1ULL << 30, hi = 1ULL << 31;
    std::uint64_t cand = lo + rng.below(hi - lo);
    Int z(static_cast<unsigned long>(cand));
    mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
    if (z >= Int(static_cast<unsigned long>(hi))) continue;
    std::uint64_t p = z.get_ui();
    if (std::find(ps.primes.begin(), ps.primes.end(), p) == ps.primes.end())
      ps.primes.push_back(p);
  }
  return ps;
}

Int PrimeSet::modulus() const {
  Int m = 1;
  for (std::uint64_t p : primes) m *= static_cast<unsigned long>(p);
  return m;
}

std::string PrimeSet::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
  return os.str();
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = (__uint128_t)r * a % p;
    a = (__uint128_t)a * a % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  // p prime; Fermat.
  a %= p;
  if (a == 0) throw reconstruction_error("division by zero mod p");
  return mod_pow(a, p - 2, p);
}

std::uint64_t int_mod(const Int& v, std::uint64_t p) {
  Int r = v % Int(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

std::uint64_t rat_mod(const Rat& r, std::uint64_t p, bool& ok) {
  std::uint64_t den = int_mod(Int(r.get_den()), p);
  if (den == 0) {
    ok = false;
    return 0;
  }
  ok = true;
  std::uint64_t num = int_mod(Int(r.get_num()), p);
  return (__uint128_t)num * mod_inv(den, p) % p;
}

bool ModRref::insert(MRow row) {
  if (finalized_) throw certification_error("insert after finalize");
  while (!row.empty()) {
    auto it = pivot_of_col_.find(row.front().first);
    if (it == pivot_of_col_.end()) break;
    const MRow& pr = rows_[it->second];
    std::uint64_t c = row.front().second;  // pivot row is monic
    // row -= c * pr
    MRow out;
    out.reserve(row.size() + pr.size());
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < pr.size()) {
      if (b == pr.size() || (a < row.size() && row[a].first < pr[b].first)) {
        out.push_back(row[a++]);
      } else if (a == row.size() || pr[b].first < row[a].first) {
        std::uint64_t v = p_ - (__uint128_t)c * pr[b].second % p_;
        if (v != p_) out.emplace_back(pr[b].first, v);
        ++b;
      } else {
        std::uint64_t v = (row[a].second + p_ - (__uint128_t)c * pr[b].second % p_) % p_;
        if (v != 0) out.emplace_back(row[a].first, v);
        ++a;
        ++b;
      }
    }
    row = std::move(out);
  }
  if (row.empty()) return false;
  std::uint64_t inv = mod_inv(row.front().second, p_);
  for (auto& [c, v] : row) v = (__uint128_t)v * inv % p_;
  pivot_of_col_[row.front().first] = rows_.size();
  rows_.push_back(std::move(row));
  return true;
}

void ModRref::finalize() {
  if (finalized_) return;
  // Back-eliminate in descending pivot order; afterwards no row contains
  // another's pivot.
  std::vector<std::pair<std::uint32_t, std::size_t>> order(pivot_of_col_.begin(),
                                                           pivot_of_col_.end());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto [pc, ri] = *it;
    const MRow src = rows_[ri];
    for (auto& [qc, qi] : order) {
      if (qi == ri || qc > pc) continue;
      MRow& dst = rows_[qi];
      auto pos = std::lower_bound(dst.begin(), dst.end(), pc,
                                  [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (pos == dst.end() || pos->first != pc) continue;
      std::uint64_t c = pos->second;
      MRow out;
      out.reserve(dst.size() + src.size());
      std::size_t a = 0, b = 0;
      while (a < dst.size() || b < src.size()) {
        if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
          out.push_back(dst[a++]);
        } else if (a == dst.size() || src[b].first < dst[a].first) {
          std::uint64_t v = p_ - (__uint128_t)c * src[b].second % p_;
          if (v != p_) out.emplace_back(src[b].first, v);
          ++b;
        } else {
          std::uint64_t v = (dst[a].second + p_ - (__uint128_t)c * src[b].second % p_) % p_;
          if (v != 0) out.emplace_back(dst[a].first, v);
          ++a;
          ++b;
        }
      }
      dst = std::move(out);
    }
  }
  finalized_ = true;
}

std::vector<std::uint32_t> ModRref::pivot_cols() const {
  std::vector<std::uint32_t> out;
  out.reserve(pivot_of_col_.size());
  for (auto& [c, i] : pivot_of_col_) out.push_back(c);
  return out;
}

const MRow* ModRref::row_for_pivot(std::uint32_t col) const {
  auto it = pivot_of_col_.find(col);
  return it == pivot_of_col_.end() ? nullptr : &rows_[it->second];
}

Int crt(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& primes) {
  if (residues.size() != primes.size() || residues.empty())
    throw reconstruction_error("crt: residue/prime count mismatch");
  Int x(static_cast<unsigned long>(residues[0]));
  Int m(static_cast<unsigned long>(primes[0]));
  for (std::size_t i = 1; i < primes.size(); ++i) {
    Int p(static_cast<unsigned long>(primes[i]));
    Int minv;
    if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()) == 0)
      throw reconstruction_error("crt: moduli not coprime");
    Int t = ((Int(static_cast<unsigned long>(residues[i])) - x) * minv) % p;
    if (t < 0) t += p;
    x += m * t;
    m *= p;
  }
  return x;
}

bool rational_reconstruct(const Int& value, const Int& modulus, Rat& out) {
  Int v = value % modulus;
  if (v < 0) v += modulus;
  if (v == 0) {
    out = 0;
    return true;
  }
  Int bound;
  mpz_sqrt(bound.get_mpz_t(), Int(modulus / 2).get_mpz_t());
  Int r0 = modulus, r1 = v, s0 = 0, s1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (s1 == 0) return false;
  Int num = r1, den = s1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den > bound) return false;
  Int g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) return false;  // lift must already be reduced or it is not unique
  out = Rat(num) / Rat(den);
  out.canonicalize();
  return true;
}

Rat reconstruct_entry(const std::vector<std::uint64_t>& residues, const PrimeSet& ps) {
  Int lifted = crt(residues, ps.primes);
  Rat out;
  if (!rational_reconstruct(lifted, ps.modulus(), out))
    throw reconstruction_error("rational reconstruction failed; more primes needed");
  // Re-reduction check against every prime.
  for (std::size_t i = 0; i < ps.primes.size(); ++i) {
    bool ok = true;
    std::uint64_t back = rat_mod(out, ps.primes[i], ok);
    if (!ok || back != residues[i] % ps.primes[i])
      throw reconstruction_error("reconstructed value fails re-reduction");
  }
  return out;
}

ModKernelResult reconstruct_kernel(std::vector<ModRref>& rrefs, const PrimeSet& ps) {
  if (rrefs.empty()) throw certification_error("no modular echelons");
  for (auto& r : rrefs) r.finalize();
  std::vector<std::uint32_t> pivots = rrefs[0].pivot_cols();
  for (auto& r : rrefs)
    if (r.pivot_cols() != pivots)
      throw certification_error("pivot sets disagree across primes");
  std::uint32_t cols = rrefs[0].cols();

  ModKernelResult res;
  res.cols = cols;
  res.pivot_cols = pivots;
  std::vector<bool> is_pivot(cols, false);
  for (std::uint32_t c : pivots) is_pivot[c] = true;

  for (std::uint32_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QRow v;
    v.emplace_back(f, 1);
    for (std::uint32_t pc : pivots) {
      std::vector<std::uint64_t> residues(ps.primes.size(), 0);
      bool any = false;
      for (std::size_t k = 0; k < rrefs.size(); ++k) {
        const MRow* row = rrefs[k].row_for_pivot(pc);
        auto pos = std::lower_bound(row->begin(), row->end(), f,
                                    [](const auto& e, std::uint32_t c) { return e.first < c; });
        if (pos != row->end() && pos->first == f) {
          residues[k] = pos->second;
          if (pos->second != 0) any = true;
        }
      }
      if (!any) continue;
      Rat val = -reconstruct_entry(residues, ps);
      if (val != 0) v.emplace_back(pc, std::move(val));
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    res.kernel.push_back(std::move(v));
  }
  return res;
}

ModularRankResult rank_modular(const SparseMatrix& M, const PrimeSet& ps) {
  ModularRankResult out;
  bool any = false;
  for (std::uint64_t p : ps.primes) {
    ModRref rref(M.cols, p);
    bool usable = true;
    for (const QRow& q : M.rows) {
      MRow m;
      m.reserve(q.size());
      for (auto& [c, v] : q) {
        bool ok = true;
        std::uint64_t r = rat_mod(v, p, ok);
        if (!ok) {
          usable = false;  // denominator collision: prime unusable
          break;
        }
        if (r != 0) m.emplace_back(c, r);
      }
      if (!usable) break;
      rref.insert(std::move(m));
    }
    out.per_prime.push_back(usable ? static_cast<std::int64_t>(rref.rank()) : -1);
    if (usable) {
      any = true;
      out.rank = std::max(out.rank, rref.rank());
    }
  }
  if (!any) throw reconstruction_error("every prime hit a denominator; rank unavailable");
  for (std::int64_t r : out.per_prime)
    if (r >= 0 && static_cast<std::uint32_t>(r) != out.rank) out.all_agree = false;
  return out;
}

}  // namespace tpres
