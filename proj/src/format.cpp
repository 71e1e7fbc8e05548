#include "tpres/format.hpp"

#include <algorithm>
#include <sstream>

namespace tpres {

std::vector<FactorExp> enumerate_exponents(int n, int deg) {
  std::vector<FactorExp> out;
  FactorExp cur(n, 0);
  // Descending choice of the first entry yields lex-descending order.
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rem - e);
    }
  };
  if (n <= 0) throw dimension_mismatch_error("factor dimension must be positive");
  rec(rec, 0, deg);
  return out;
}

TensorFormat::TensorFormat(std::vector<int> dims, std::vector<int> degrees)
    : dims_(std::move(dims)), degrees_(std::move(degrees)) {
  if (dims_.empty() || dims_.size() != degrees_.size())
    throw dimension_mismatch_error("format needs matching nonempty dims and degrees");
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 1 || degrees_[i] < 1)
      throw dimension_mismatch_error("format dims and degrees must be >= 1");
    factor_exps_.push_back(enumerate_exponents(dims_[i], degrees_[i]));
    std::map<FactorExp, int> idx;
    for (std::size_t j = 0; j < factor_exps_.back().size(); ++j)
      idx[factor_exps_.back()[j]] = static_cast<int>(j);
    factor_index_.push_back(std::move(idx));
    weight_offsets_.push_back(weight_len_);
    weight_len_ += dims_[i];
  }
  Int total = 1;
  for (int i = 0; i < factors(); ++i) total *= factor_size(i);
  if (total > 0x7fffffff)
    throw cap_exceeded_error("ambient dimension exceeds 2^31");
  ambient_ = static_cast<std::uint32_t>(total.get_ui());
  radix_.assign(dims_.size(), 1);
  for (int i = factors() - 2; i >= 0; --i)
    radix_[i] = radix_[i + 1] * static_cast<std::uint32_t>(factor_size(i + 1));
}

TensorFormat TensorFormat::segre(std::vector<int> dims) {
  std::vector<int> ones(dims.size(), 1);
  return TensorFormat(std::move(dims), std::move(ones));
}

int TensorFormat::factor_coord_index(int i, const FactorExp& e) const {
  auto it = factor_index_[i].find(e);
  if (it == factor_index_[i].end())
    throw dimension_mismatch_error("exponent vector not a coordinate of this factor");
  return it->second;
}

std::uint32_t TensorFormat::pack(const std::vector<FactorExp>& exps) const {
  if (static_cast<int>(exps.size()) != factors())
    throw dimension_mismatch_error("coordinate has wrong number of factors");
  std::uint32_t idx = 0;
  for (int i = 0; i < factors(); ++i)
    idx += static_cast<std::uint32_t>(factor_coord_index(i, exps[i])) * radix_[i];
  return idx;
}

std::vector<FactorExp> TensorFormat::unpack(std::uint32_t coord) const {
  std::vector<FactorExp> out;
  out.reserve(dims_.size());
  for (int i = 0; i < factors(); ++i)
    out.push_back(factor_exps_[i][factor_local(coord, i)]);
  return out;
}

const FactorExp& TensorFormat::factor_exp(std::uint32_t coord, int i) const {
  return factor_exps_[i][factor_local(coord, i)];
}

int TensorFormat::factor_local(std::uint32_t coord, int i) const {
  return static_cast<int>((coord / radix_[i]) % static_cast<std::uint32_t>(factor_size(i)));
}

std::uint32_t TensorFormat::replace_factor_local(std::uint32_t coord, int i, int local) const {
  int old = factor_local(coord, i);
  return coord + (static_cast<std::uint32_t>(local) - static_cast<std::uint32_t>(old)) * radix_[i];
}

std::vector<int> TensorFormat::coord_weight(std::uint32_t coord) const {
  std::vector<int> w(weight_len_, 0);
  for (int i = 0; i < factors(); ++i) {
    const FactorExp& e = factor_exp(coord, i);
    for (int j = 0; j < dims_[i]; ++j) w[weight_offsets_[i] + j] = e[j];
  }
  return w;
}

std::string TensorFormat::coord_name(std::uint32_t coord) const {
  std::ostringstream os;
  os << "t[";
  for (int i = 0; i < factors(); ++i) {
    if (i) os << '|';
    const FactorExp& e = factor_exp(coord, i);
    bool first = true;
    for (int j = 0; j < dims_[i]; ++j)
      for (int r = 0; r < e[j]; ++r) {
        if (!first) os << ',';
        os << (j + 1);
        first = false;
      }
  }
  os << ']';
  return os.str();
}

std::uint32_t TensorFormat::parse_coord(const std::string& name) const {
  std::size_t a = name.find('[');
  std::size_t b = name.rfind(']');
  if (name.substr(0, a) != "t" || a == std::string::npos || b == std::string::npos || b < a)
    throw parse_error("bad coordinate: " + name);
  std::string body = name.substr(a + 1, b - a - 1);
  std::vector<FactorExp> exps;
  std::size_t pos = 0;
  for (int i = 0; i < factors(); ++i) {
    std::size_t bar = body.find('|', pos);
    std::string part = (bar == std::string::npos) ? body.substr(pos) : body.substr(pos, bar - pos);
    if (i + 1 < factors()) {
      if (bar == std::string::npos) throw parse_error("bad coordinate: " + name);
      pos = bar + 1;
    } else if (bar != std::string::npos) {
      throw parse_error("bad coordinate: " + name);
    }
    FactorExp e(dims_[i], 0);
    int seen = 0;
    std::istringstream is(part);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      int v = std::stoi(tok);
      if (v < 1 || v > dims_[i]) throw parse_error("coordinate index out of range: " + name);
      ++e[v - 1];
      ++seen;
    }
    if (seen != degrees_[i]) throw parse_error("coordinate degree mismatch: " + name);
    exps.push_back(std::move(e));
  }
  return pack(exps);
}

std::string TensorFormat::to_string() const {
  std::ostringstream os;
  os << "dims=";
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << " degrees=";
  for (std::size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
  return os.str();
}

static std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw parse_error("empty entry in integer list: " + s);
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw parse_error("empty integer list");
  return out;
}

TensorFormat TensorFormat::parse(const std::string& literal) {
  std::string s = literal;
  std::size_t dpos = s.find("dims=");
  if (dpos == std::string::npos) {
    // Bare dims list: a Segre format.
    return TensorFormat::segre(parse_int_list(s));
  }
  std::size_t dend = s.find(' ', dpos);
  std::string dims = s.substr(dpos + 5, dend == std::string::npos ? std::string::npos : dend - dpos - 5);
  std::size_t gpos = s.find("degrees=");
  if (gpos == std::string::npos) return TensorFormat::segre(parse_int_list(dims));
  std::size_t gend = s.find(' ', gpos);
  std::string degs = s.substr(gpos + 8, gend == std::string::npos ? std::string::npos : gend - gpos - 8);
  return TensorFormat(parse_int_list(dims), parse_int_list(degs));
}

}  // namespace tpres
