#pragma once

#include "tpres/combinat.hpp"
#include "tpres/linalg.hpp"
#include "tpres/subspace.hpp"
#include "tpres/transform.hpp"

namespace tpres {

// Result of one Lie-annihilator computation. The dimension is exactly
// certified: the modular kernel bounds it from above (minors only vanish
// more often mod p) and the exact re-verification of every reconstructed
// basis matrix bounds it from below.
struct StabilizerResult {
  std::uint32_t dim = 0;
  std::vector<RatMat> basis;          // canonical kernel order
  std::vector<std::uint64_t> primes;  // primes that certified the run
  bool contains_expected = false;     // every product-group generator annihilates
  bool equals_expected = false;       // and the dimensions coincide
  std::uint32_t expected_rank = 0;    // rank of the product-group generator span
};

// { A in gl(N) : A . f in span for every basis element f }, solved by
// streaming the exactly assembled annihilator rows through per-prime
// echelons, reconstructing the canonical kernel, and re-verifying it in
// exact arithmetic. The component must be nonzero. An explicit prime list
// replaces the seeded retry plan and fails hard on a bad set.
StabilizerResult lie_annihilator(const TensorFormat& fmt, const LinearSubspace& I,
                                 std::uint64_t prime_seed = 0x5eedULL,
                                 const Caps& caps = Caps(),
                                 const std::vector<std::uint64_t>* explicit_primes = nullptr);

// Annihilator of a one-polynomial component.
StabilizerResult stabilize_single_invariant(const TensorFormat& fmt, const Poly& f,
                                            std::uint64_t prime_seed = 0x5eedULL,
                                            const Caps& caps = Caps());

bool bracket_closed(const std::vector<RatMat>& basis);

enum class Verdict { expected, larger_than_expected, inconclusive };
std::string verdict_name(Verdict v);

struct PreserverReport {
  Int expected_dim = 0;
  Verdict verdict = Verdict::inconclusive;
  // When a coarser grouping of the degree-1 factors explains a larger
  // dimension: the block partition (factor indices) and its merged dims.
  std::vector<std::vector<int>> merged_blocks;
  std::vector<int> merged_dims;
  // For the expected verdict: what the dimension match licenses.
  std::string inference;
};

// Compares the annihilator dimension with the product-group prediction and,
// when larger, tests the caller's merged-format candidates in order, then
// searches the set partitions of the degree-1 factors (finest first) for a
// merged format whose prediction matches.
PreserverReport preserver_verdict(const TensorFormat& fmt, const StabilizerResult& stab,
                                  const std::vector<std::vector<int>>* merged_candidates = nullptr);

}  // namespace tpres
