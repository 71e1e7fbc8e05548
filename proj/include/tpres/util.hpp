#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace tpres {

using Rat = mpq_class;
using Int = mpz_class;

// Error taxonomy. The CLI maps cap_exceeded_error to exit code 3 and
// verification_error / certification_error to exit code 4; everything else
// is a plain failure.
struct cap_exceeded_error : std::runtime_error {
  explicit cap_exceeded_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct degree_mismatch_error : std::runtime_error {
  explicit degree_mismatch_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct dimension_mismatch_error : std::runtime_error {
  explicit dimension_mismatch_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct reconstruction_error : std::runtime_error {
  explicit reconstruction_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct certification_error : std::runtime_error {
  explicit certification_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct verification_error : std::runtime_error {
  explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct Caps {
  // Largest monomial basis any operation may materialize.
  std::uint64_t monomial_cap = 10'000'000;
  // Largest candidate set interpolation may build.
  std::uint64_t candidate_cap = 200'000;
  // Largest number of equation rows a stabilizer run may stream.
  std::uint64_t row_cap = 500'000'000;
};

// Deterministic cross-platform RNG (splitmix64). Never seeded from time.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do { v = next(); } while (v >= limit);
    return v % n;
  }

  // Uniform integer in [-bound, bound].
  long symmetric(long bound) {
    return static_cast<long>(below(2 * static_cast<std::uint64_t>(bound) + 1)) - bound;
  }

  // Derive an independent stream for subtask i.
  Rng fork(std::uint64_t i) const {
    Rng r(state_ ^ (0x6a09e667f3bcc909ULL + i * 0x3c6ef372fe94f82bULL));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Checked conversion for counts that must stay machine-sized.
inline std::uint64_t to_u64(const Int& v, const char* what) {
  if (v < 0 || !v.fits_ulong_p())
    throw cap_exceeded_error(std::string(what) + ": count does not fit in a machine word");
  return v.get_ui();
}

}  // namespace tpres
