#include "tpres/combinat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tpres {

Bipartition Bipartition::from_left(int k, std::vector<int> left_set) {
  std::sort(left_set.begin(), left_set.end());
  left_set.erase(std::unique(left_set.begin(), left_set.end()), left_set.end());
  for (int i : left_set)
    if (i < 0 || i >= k) throw dimension_mismatch_error("bipartition index out of range");
  Bipartition bp;
  std::vector<bool> in_left(k, false);
  for (int i : left_set) in_left[i] = true;
  for (int i = 0; i < k; ++i) (in_left[i] ? bp.left : bp.right).push_back(i);
  if (bp.left.empty() || bp.right.empty())
    throw dimension_mismatch_error("bipartition sides must be nonempty");
  if (!in_left[0]) std::swap(bp.left, bp.right);
  return bp;
}

std::string Bipartition::to_string() const {
  int k = static_cast<int>(left.size() + right.size());
  bool compact = k <= 9;
  auto side = [&](const std::vector<int>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i && !compact) os << ',';
      os << (v[i] + 1);
    }
    return os.str();
  };
  return side(left) + "|" + side(right);
}

std::vector<Bipartition> all_bipartitions(int k) {
  if (k < 2) throw dimension_mismatch_error("bipartitions need at least two factors");
  std::vector<Bipartition> out;
  // Left set = mask containing bit 0; skip the full set.
  for (unsigned mask = 1; mask < (1u << k) - 1; mask += 2) {
    std::vector<int> left_set;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) left_set.push_back(i);
    out.push_back(Bipartition::from_left(k, std::move(left_set)));
  }
  return out;
}

Bipartition parse_bipartition(int k, const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](char c) { return c == '{' || c == '}' || c == ' '; }),
          s.end());
  std::size_t bar = s.find('|');
  if (bar == std::string::npos) throw parse_error("bipartition needs a '|': " + text);
  auto parse_side = [&](const std::string& part) {
    std::vector<int> out;
    if (part.find(',') != std::string::npos) {
      std::istringstream is(part);
      std::string tok;
      while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok) - 1);
    } else {
      for (char c : part) {
        if (c < '1' || c > '9') throw parse_error("bad factor index in bipartition: " + text);
        out.push_back(c - '1');
      }
    }
    return out;
  };
  std::vector<int> left_set = parse_side(s.substr(0, bar));
  std::vector<int> right_set = parse_side(s.substr(bar + 1));
  std::vector<int> both = left_set;
  both.insert(both.end(), right_set.begin(), right_set.end());
  std::sort(both.begin(), both.end());
  std::vector<int> expect(k);
  std::iota(expect.begin(), expect.end(), 0);
  if (both != expect) throw parse_error("bipartition must cover every factor once: " + text);
  return Bipartition::from_left(k, std::move(left_set));
}

std::vector<Bipartition> parse_bipartition_list(int k, const std::string& text) {
  std::vector<Bipartition> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ';'))
    if (!tok.empty()) out.push_back(parse_bipartition(k, tok));
  if (out.empty()) throw parse_error("empty bipartition list");
  return out;
}

Int bipartition_value(const Bipartition& bp, const std::vector<int>& dims) {
  Int l = 1, r = 1;
  for (int i : bp.left) l *= dims.at(i);
  for (int j : bp.right) r *= dims.at(j);
  return std::min(l, r);
}

SetPartition set_partition_meet(int k, const std::vector<Bipartition>& B) {
  // Two factors stay together iff no bipartition separates them: group by
  // the membership signature across B.
  std::map<std::vector<int>, std::vector<int>> groups;
  for (int i = 0; i < k; ++i) {
    std::vector<int> sig;
    for (const auto& bp : B)
      sig.push_back(std::count(bp.left.begin(), bp.left.end(), i) ? 0 : 1);
    groups[sig].push_back(i);
  }
  SetPartition out;
  for (auto& [sig, blk] : groups) out.push_back(blk);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool is_separating(int k, const std::vector<Bipartition>& B) {
  return set_partition_meet(k, B).size() == static_cast<std::size_t>(k);
}

BoundResult s_of_n(const std::vector<int>& dims) {
  int k = static_cast<int>(dims.size());
  std::vector<Bipartition> all = all_bipartitions(k);
  std::set<Int> values;
  for (const auto& bp : all) values.insert(bipartition_value(bp, dims));
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    std::vector<Bipartition> family;
    for (const auto& bp : all)
      if (bipartition_value(bp, dims) >= *it) family.push_back(bp);
    if (is_separating(k, family)) {
      BoundResult res;
      res.s = *it;
      res.witness = std::move(family);
      res.r_max = res.s - 1;
      return res;
    }
  }
  // The family of all bipartitions is separating, so the smallest value
  // always passes; unreachable.
  throw std::logic_error("threshold descent failed");
}

Int expected_preserver_dim(const std::vector<int>& dims) {
  Int d = 1;
  for (int n : dims) d += Int(n) * n - 1;
  return d;
}

PreserverDescriptor predicted_partition_preserver(const std::vector<int>& dims,
                                                  const std::vector<Bipartition>& B) {
  int k = static_cast<int>(dims.size());
  PreserverDescriptor out;
  out.blocks = set_partition_meet(k, B);
  std::vector<std::vector<int>> multisets;
  for (auto& blk : out.blocks) {
    Int prod = 1;
    std::vector<int> ms;
    for (int i : blk) {
      prod *= dims[i];
      ms.push_back(dims[i]);
    }
    std::sort(ms.begin(), ms.end());
    multisets.push_back(std::move(ms));
    if (!prod.fits_sint_p())
      throw cap_exceeded_error("merged block dimension too large");
    out.merged_dims.push_back(static_cast<int>(prod.get_si()));
  }
  out.lie_dim = expected_preserver_dim(out.merged_dims);
  std::map<std::vector<int>, int> counts;
  for (auto& ms : multisets) ++counts[ms];
  std::ostringstream expr;
  bool first = true;
  for (auto& [ms, c] : counts) {
    Int f = 1;
    for (int i = 2; i <= c; ++i) f *= i;
    out.shat_order *= f;
    if (c >= 2) {
      if (!first) expr << " x ";
      expr << "S" << c;
      first = false;
    }
  }
  out.shat_expr = first ? "1" : expr.str();
  return out;
}

bool is_nonredundant(const std::vector<int>& degrees, const std::vector<int>& ranks) {
  if (degrees.size() != ranks.size())
    throw dimension_mismatch_error("degrees and ranks must have equal length");
  int k = static_cast<int>(degrees.size());
  for (int i = 0; i < k; ++i) {
    if (ranks[i] < 1) throw dimension_mismatch_error("ranks must be >= 1");
    if (degrees[i] >= 2) continue;
    Int prod = 1;
    for (int j = 0; j < k; ++j)
      if (j != i) prod *= binomial(ranks[j] + degrees[j] - 1, degrees[j]);
    if (Int(ranks[i]) > prod) return false;
  }
  return true;
}

}  // namespace tpres
