#pragma once

#include "tpres/equations.hpp"
#include "tpres/transform.hpp"

namespace tpres {

// Index-permutation symmetrization of the candidate monomials: raw keeps
// single monomials, plain sums each orbit, alternating sums with the
// per-factor parity character (exponent delta*d_i/n_i on factor i).
enum class WeylMode { raw, plain, alternating };
// Additional symmetrization over exchanges of identical factors.
enum class FactorMode { none, sym, skew };

struct CandidateBasis {
  int delta = 0;
  WeylMode weyl = WeylMode::raw;
  FactorMode factor = FactorMode::none;
  // Disjoint supports inside the weight-zero slice, canonical integer form.
  std::vector<Poly> elements;
};

CandidateBasis build_candidate_basis(const TensorFormat& fmt, int delta, WeylMode weyl,
                                     FactorMode factor, const Caps& caps = Caps());

struct VerificationReport {
  int vanish_trials = 0;
  bool vanish_ok = false;
  int nonvanish_hits = 0;
  bool nonvanish_ok = false;
  int sl_trials = 0;
  bool sl_ok = false;
  bool ok() const { return vanish_ok && nonvanish_ok && sl_ok; }
};

struct InterpolationResult {
  std::uint32_t kernel_dim = 0;  // always 1 on return; other dims throw
  Poly invariant;
  std::vector<std::uint64_t> primes;
  int samples = 0;
  std::size_t candidates = 0;
  VerificationReport verification;
};

// Cuts the candidate span against evaluation at random points of the r-th
// secant. Kernels are computed per prime, reconstructed, and the resulting
// polynomial re-checked exactly at every sample point, re-checked to be
// weight homogeneous of weight zero, and run through the verification
// battery. Kernel dimension 0 (no invariant at this degree) or > 1 even
// after one oversampling round raises verification_error.
InterpolationResult interpolate_invariant(const TensorFormat& fmt, int delta, int r,
                                          WeylMode weyl, FactorMode factor,
                                          std::uint64_t seed, int margin = 10,
                                          const Caps& caps = Caps());

// Battery for a claimed secant invariant: vanishing on fresh secant samples,
// generic nonvanishing, and exact invariance under random unipotent
// substitutions.
VerificationReport verify_invariant(const TensorFormat& fmt, const Poly& f, int r,
                                    std::uint64_t seed, const Caps& caps = Caps());

}  // namespace tpres
