#include "tpres/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tpres {

Poly poly_from_terms(int degree, std::vector<std::pair<Monomial, Rat>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return mono_less(a.first, b.first); });
  Poly p;
  p.degree = degree;
  for (auto& [m, c] : terms) {
    if (c == 0) continue;
    if (m.degree() != degree)
      throw degree_mismatch_error("term degree does not match polynomial degree");
    if (!p.terms.empty() && p.terms.back().first == m)
      p.terms.back().second += c;
    else
      p.terms.emplace_back(m, c);
    if (p.terms.back().second == 0) p.terms.pop_back();
  }
  return p;
}

Poly poly_one_term(const Monomial& m, const Rat& c) {
  Poly p;
  p.degree = m.degree();
  if (c != 0) p.terms.emplace_back(m, c);
  return p;
}

void poly_axpy(Poly& dst, const Rat& c, const Poly& src) {
  if (c == 0 || src.is_zero()) return;
  if (dst.is_zero() && dst.degree == 0) dst.degree = src.degree;
  if (dst.degree != src.degree)
    throw degree_mismatch_error("poly_axpy degree mismatch");
  std::vector<std::pair<Monomial, Rat>> out;
  out.reserve(dst.terms.size() + src.terms.size());
  std::size_t i = 0, j = 0;
  while (i < dst.terms.size() || j < src.terms.size()) {
    bool take_dst;
    if (i == dst.terms.size())
      take_dst = false;
    else if (j == src.terms.size())
      take_dst = true;
    else if (dst.terms[i].first == src.terms[j].first) {
      Rat v = dst.terms[i].second + c * src.terms[j].second;
      if (v != 0) out.emplace_back(dst.terms[i].first, std::move(v));
      ++i;
      ++j;
      continue;
    } else {
      take_dst = mono_less(dst.terms[i].first, src.terms[j].first);
    }
    if (take_dst)
      out.push_back(dst.terms[i++]);
    else
      out.emplace_back(src.terms[j].first, c * src.terms[j].second), ++j;
  }
  dst.terms = std::move(out);
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  poly_axpy(r, 1, b);
  return r;
}

void poly_scale(Poly& p, const Rat& c) {
  if (c == 0) {
    p.terms.clear();
    return;
  }
  for (auto& [m, v] : p.terms) v *= c;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  std::vector<std::pair<Monomial, Rat>> terms;
  terms.reserve(a.terms.size() * b.terms.size());
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) terms.emplace_back(mono_mul(ma, mb), ca * cb);
  return poly_from_terms(a.degree + b.degree, std::move(terms));
}

bool poly_equal(const Poly& a, const Poly& b) { return a.terms == b.terms; }

bool poly_proportional(const Poly& a, const Poly& b) {
  if (a.terms.size() != b.terms.size()) return false;
  if (a.is_zero()) return true;
  Rat c = a.terms[0].second / b.terms[0].second;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (!(a.terms[i].first == b.terms[i].first)) return false;
    if (a.terms[i].second != c * b.terms[i].second) return false;
  }
  return true;
}

const Rat* poly_coeff(const Poly& p, const Monomial& m) {
  auto it = std::lower_bound(p.terms.begin(), p.terms.end(), m,
                             [](const auto& t, const Monomial& mm) { return mono_less(t.first, mm); });
  if (it != p.terms.end() && it->first == m) return &it->second;
  return nullptr;
}

void poly_canonicalize(Poly& p) {
  if (p.is_zero()) return;
  Int den = 1, num = 0;
  for (auto& [m, c] : p.terms) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  for (auto& [m, c] : p.terms) {
    Int v = c.get_num() * (den / c.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  }
  Rat scale(den, num);
  scale.canonicalize();
  if (p.terms[0].second < 0) scale = -scale;
  poly_scale(p, scale);
}

static Rat falling(std::uint32_t e, std::uint32_t a) {
  Int r = 1;
  for (std::uint32_t i = 0; i < a; ++i) r *= (e - i);
  return Rat(r);
}

Poly contract_mono(const Monomial& dual, const Poly& f) {
  int dd = dual.degree();
  if (dd > f.degree) throw degree_mismatch_error("contraction operator degree exceeds target");
  std::vector<std::pair<Monomial, Rat>> terms;
  Monomial q;
  for (auto& [m, c] : f.terms) {
    if (!mono_div(m, dual, q)) continue;
    Rat mult = c;
    std::size_t i = 0;
    for (auto& [dc, de] : dual.t) {
      while (m.t[i].first != dc) ++i;
      mult *= falling(m.t[i].second, de);
    }
    terms.emplace_back(q, std::move(mult));
  }
  return poly_from_terms(f.degree - dd, std::move(terms));
}

Poly contract(const Poly& op, const Poly& f) {
  if (op.degree > f.degree) throw degree_mismatch_error("contraction operator degree exceeds target");
  Poly acc;
  acc.degree = f.degree - op.degree;
  for (auto& [dm, dc] : op.terms) poly_axpy(acc, dc, contract_mono(dm, f));
  return acc;
}

const std::vector<std::pair<std::uint32_t, Rat>> RatMat::empty_;

void RatMat::add(std::uint32_t u, std::uint32_t v, const Rat& val) {
  if (u >= n_ || v >= n_) throw dimension_mismatch_error("RatMat entry out of range");
  if (val == 0) return;
  auto& col = cols_[v];
  for (auto& [uu, vv] : col)
    if (uu == u) {
      vv += val;
      return;
    }
  col.emplace_back(u, val);
}

const std::vector<std::pair<std::uint32_t, Rat>>& RatMat::col(std::uint32_t v) const {
  auto it = cols_.find(v);
  return it == cols_.end() ? empty_ : it->second;
}

std::vector<std::tuple<std::uint32_t, std::uint32_t, Rat>> RatMat::entries() const {
  std::vector<std::tuple<std::uint32_t, std::uint32_t, Rat>> out;
  for (auto& [v, col] : cols_)
    for (auto& [u, val] : col)
      if (val != 0) out.emplace_back(u, v, val);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::make_pair(std::get<0>(a), std::get<1>(a)) <
           std::make_pair(std::get<0>(b), std::get<1>(b));
  });
  return out;
}

RatMat RatMat::identity(std::uint32_t n) {
  RatMat m(n);
  for (std::uint32_t i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

std::size_t RatMat::nnz() const {
  std::size_t s = 0;
  for (auto& [v, col] : cols_)
    for (auto& [u, val] : col)
      if (val != 0) ++s;
  return s;
}

Poly lie_action(const RatMat& A, const Poly& f) {
  Poly acc;
  acc.degree = f.degree;
  std::vector<std::pair<Monomial, Rat>> terms;
  for (auto& [m, c] : f.terms) {
    for (std::size_t iv = 0; iv < m.t.size(); ++iv) {
      auto [v, ev] = m.t[iv];
      const auto& col = A.col(v);
      if (col.empty()) continue;
      // me = m / x_v
      Monomial me = m;
      if (me.t[iv].second == 1)
        me.t.erase(me.t.begin() + static_cast<long>(iv));
      else
        --me.t[iv].second;
      for (auto& [u, a] : col) {
        Monomial one;
        one.t.emplace_back(u, 1);
        terms.emplace_back(mono_mul(me, one), a * c * ev);
      }
    }
  }
  return poly_from_terms(f.degree, std::move(terms));
}

Rat evaluate(const Poly& f, const std::vector<Rat>& point) {
  Rat acc = 0;
  for (auto& [m, c] : f.terms) {
    Rat v = c;
    for (auto& [coord, e] : m.t) {
      if (coord >= point.size()) throw dimension_mismatch_error("point too short for polynomial");
      Rat pw = point[coord];
      for (std::uint32_t i = 1; i < e; ++i) pw *= point[coord];
      v *= pw;
    }
    acc += v;
  }
  return acc;
}

std::string poly_to_string(const TensorFormat& fmt, const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p.terms) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    os << a << '*' << mono_to_string(fmt, m);
    first = false;
  }
  return os.str();
}

namespace {

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return s[pos];
  }
};

Rat parse_rational(Lexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  if (lx.pos < lx.s.size() && (lx.s[lx.pos] == '+' || lx.s[lx.pos] == '-')) ++lx.pos;
  while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) ++lx.pos;
  if (lx.pos < lx.s.size() && lx.s[lx.pos] == '/') {
    ++lx.pos;
    while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) ++lx.pos;
  }
  std::string tok = lx.s.substr(start, lx.pos - start);
  if (tok.empty() || tok == "+" || tok == "-") throw parse_error("expected rational in polynomial");
  Rat r(tok);
  r.canonicalize();
  return r;
}

Monomial parse_monomial(const TensorFormat& fmt, Lexer& lx) {
  Monomial m;
  for (;;) {
    lx.skip_ws();
    if (lx.pos >= lx.s.size() || lx.s[lx.pos] != 't') break;
    std::size_t close = lx.s.find(']', lx.pos);
    if (close == std::string::npos) throw parse_error("unterminated coordinate");
    std::uint32_t coord = fmt.parse_coord(lx.s.substr(lx.pos, close - lx.pos + 1));
    lx.pos = close + 1;
    std::uint32_t e = 1;
    lx.skip_ws();
    if (lx.pos < lx.s.size() && lx.s[lx.pos] == '^') {
      ++lx.pos;
      lx.skip_ws();
      std::size_t st = lx.pos;
      while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) ++lx.pos;
      e = static_cast<std::uint32_t>(std::stoul(lx.s.substr(st, lx.pos - st)));
    }
    Monomial one;
    one.t.emplace_back(coord, e);
    m = mono_mul(m, one);
    lx.skip_ws();
    if (lx.pos < lx.s.size() && lx.s[lx.pos] == '*') {
      ++lx.pos;
      continue;
    }
    break;
  }
  return m;
}

}  // namespace

Poly poly_parse(const TensorFormat& fmt, const std::string& text) {
  Lexer lx(text);
  std::vector<std::pair<Monomial, Rat>> terms;
  int sign = 1;
  bool any = false;
  int degree = -1;
  while (!lx.eof()) {
    char c = lx.peek();
    if (c == '+') {
      ++lx.pos;
      continue;
    }
    if (c == '-') {
      sign = -sign;
      ++lx.pos;
      continue;
    }
    Rat coeff = 1;
    Monomial m;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff = parse_rational(lx);
      lx.skip_ws();
      if (lx.pos < lx.s.size() && lx.s[lx.pos] == '*') {
        ++lx.pos;
        m = parse_monomial(fmt, lx);
        if (m.t.empty()) throw parse_error("expected monomial after '*'");
      }
    } else if (c == 't') {
      m = parse_monomial(fmt, lx);
      if (m.t.empty()) throw parse_error("bad term in polynomial");
    } else {
      throw parse_error(std::string("unexpected character '") + c + "' in polynomial");
    }
    if (degree < 0)
      degree = m.degree();
    else if (m.degree() != degree)
      throw degree_mismatch_error("mixed degrees in polynomial text");
    terms.emplace_back(std::move(m), sign * coeff);
    sign = 1;
    any = true;
  }
  if (!any) {
    Poly z;
    return z;
  }
  return poly_from_terms(degree, std::move(terms));
}

}  // namespace tpres
