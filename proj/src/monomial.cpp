#include "tpres/monomial.hpp"

#include <algorithm>
#include <sstream>

namespace tpres {

bool mono_less(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Walk both sparse vectors; at the first coordinate where the exponents
  // differ, the larger exponent sorts first.
  std::size_t i = 0, j = 0;
  while (i < a.t.size() && j < b.t.size()) {
    if (a.t[i].first < b.t[j].first) return true;   // a positive where b zero
    if (b.t[j].first < a.t[i].first) return false;
    if (a.t[i].second != b.t[j].second) return a.t[i].second > b.t[j].second;
    ++i;
    ++j;
  }
  if (j < b.t.size()) return false;
  return i < a.t.size();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size() || (i < a.t.size() && a.t[i].first < b.t[j].first)) {
      r.t.push_back(a.t[i++]);
    } else if (i == a.t.size() || b.t[j].first < a.t[i].first) {
      r.t.push_back(b.t[j++]);
    } else {
      r.t.emplace_back(a.t[i].first, a.t[i].second + b.t[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

bool mono_div(const Monomial& a, const Monomial& b, Monomial& out) {
  out.t.clear();
  std::size_t i = 0;
  for (auto& [c, e] : b.t) {
    while (i < a.t.size() && a.t[i].first < c) out.t.push_back(a.t[i++]);
    if (i == a.t.size() || a.t[i].first != c || a.t[i].second < e) return false;
    if (a.t[i].second > e) out.t.emplace_back(c, a.t[i].second - e);
    ++i;
  }
  while (i < a.t.size()) out.t.push_back(a.t[i++]);
  return true;
}

Monomial mono_from_coords(std::vector<std::uint32_t> coords) {
  std::sort(coords.begin(), coords.end());
  Monomial m;
  for (std::uint32_t c : coords) {
    if (!m.t.empty() && m.t.back().first == c)
      ++m.t.back().second;
    else
      m.t.emplace_back(c, 1);
  }
  return m;
}

std::vector<int> weight(const TensorFormat& fmt, const Monomial& m) {
  std::vector<int> w(fmt.weight_len(), 0);
  for (auto& [c, e] : m.t) {
    for (int i = 0; i < fmt.factors(); ++i) {
      const FactorExp& fe = fmt.factor_exp(c, i);
      int off = fmt.weight_offset(i);
      for (int j = 0; j < fmt.dims()[i]; ++j) w[off + j] += static_cast<int>(e) * fe[j];
    }
  }
  return w;
}

bool weight_zero_exists(const TensorFormat& fmt, int delta) {
  for (int i = 0; i < fmt.factors(); ++i)
    if ((delta * fmt.degrees()[i]) % fmt.dims()[i] != 0) return false;
  return true;
}

bool is_weight_zero(const TensorFormat& fmt, int delta, const Monomial& m) {
  if (!weight_zero_exists(fmt, delta)) return false;
  std::vector<int> w = weight(fmt, m);
  for (int i = 0; i < fmt.factors(); ++i) {
    int target = delta * fmt.degrees()[i] / fmt.dims()[i];
    for (int j = 0; j < fmt.dims()[i]; ++j)
      if (w[fmt.weight_offset(i) + j] != target) return false;
  }
  return true;
}

Int count_monomials(const TensorFormat& fmt, int delta) {
  return binomial(fmt.ambient_dim() + delta - 1, delta);
}

std::vector<Monomial> enumerate_monomials(const TensorFormat& fmt, int delta, std::uint64_t cap) {
  Int count = count_monomials(fmt, delta);
  if (count > Int(static_cast<unsigned long>(cap)))
    throw cap_exceeded_error("monomial basis of size " + count.get_str() +
                             " exceeds cap " + std::to_string(cap));
  std::vector<Monomial> out;
  out.reserve(to_u64(count, "enumerate_monomials"));
  std::uint32_t n = fmt.ambient_dim();
  Monomial cur;
  auto rec = [&](auto&& self, std::uint32_t c, int rem) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    if (c == n) return;
    if (c == n - 1) {
      cur.t.emplace_back(c, rem);
      out.push_back(cur);
      cur.t.pop_back();
      return;
    }
    for (int e = rem; e >= 1; --e) {
      cur.t.emplace_back(c, e);
      self(self, c + 1, rem - e);
      cur.t.pop_back();
    }
    self(self, c + 1, rem);
  };
  rec(rec, 0, delta);
  return out;
}

void for_each_weight_zero(const TensorFormat& fmt, int delta,
                          const std::function<void(const Monomial&)>& fn,
                          std::uint64_t cap) {
  if (!weight_zero_exists(fmt, delta)) return;
  int wl = fmt.weight_len();
  std::vector<int> deficit(wl);
  for (int i = 0; i < fmt.factors(); ++i) {
    int target = delta * fmt.degrees()[i] / fmt.dims()[i];
    for (int j = 0; j < fmt.dims()[i]; ++j) deficit[fmt.weight_offset(i) + j] = target;
  }
  std::uint32_t n = fmt.ambient_dim();
  // Per-coordinate weights and, per weight entry, the last coordinate that
  // can still feed it: once the scan passes that coordinate a positive
  // deficit is unfillable and the branch dies.
  std::vector<std::vector<std::pair<int, int>>> cw(n);  // coord -> (entry, amount)
  std::vector<std::uint32_t> last_touch(wl, 0);
  for (std::uint32_t c = 0; c < n; ++c) {
    std::vector<int> w = fmt.coord_weight(c);
    for (int e = 0; e < wl; ++e)
      if (w[e] > 0) {
        cw[c].emplace_back(e, w[e]);
        last_touch[e] = c;
      }
  }
  std::uint64_t emitted = 0;
  Monomial cur;
  auto rec = [&](auto&& self, std::uint32_t c, int rem) -> void {
    if (rem == 0) {
      if (++emitted > cap)
        throw cap_exceeded_error("weight-zero enumeration exceeds cap " + std::to_string(cap));
      fn(cur);
      return;
    }
    if (c == n) return;
    for (int e = 0; e < wl; ++e)
      if (deficit[e] > 0 && last_touch[e] < c) return;
    int maxmult = rem;
    for (auto& [e, amt] : cw[c]) maxmult = std::min(maxmult, deficit[e] / amt);
    for (int mult = maxmult; mult >= 1; --mult) {
      for (auto& [e, amt] : cw[c]) deficit[e] -= mult * amt;
      cur.t.emplace_back(c, mult);
      self(self, c + 1, rem - mult);
      cur.t.pop_back();
      for (auto& [e, amt] : cw[c]) deficit[e] += mult * amt;
    }
    self(self, c + 1, rem);
  };
  rec(rec, 0, delta);
}

std::vector<Monomial> enumerate_weight_zero(const TensorFormat& fmt, int delta, std::uint64_t cap) {
  std::vector<Monomial> out;
  for_each_weight_zero(fmt, delta, [&](const Monomial& m) { out.push_back(m); }, cap);
  return out;
}

std::string mono_to_string(const TensorFormat& fmt, const Monomial& m) {
  if (m.t.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [c, e] : m.t) {
    if (!first) os << '*';
    os << fmt.coord_name(c);
    if (e > 1) os << '^' << e;
    first = false;
  }
  return os.str();
}

}  // namespace tpres
