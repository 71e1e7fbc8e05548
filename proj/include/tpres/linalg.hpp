#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tpres/util.hpp"

namespace tpres {

// Sparse row over Q: (column, value), sorted by column, values nonzero.
using QRow = std::vector<std::pair<std::uint32_t, Rat>>;
// Sparse row mod p.
using MRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

struct SparseMatrix {
  std::uint32_t cols = 0;
  std::vector<QRow> rows;
  void add_row(QRow r);
};

struct NullspaceResult {
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> pivot_cols;  // ascending
  // Canonical kernel basis: one vector per free column, unit there, the
  // remaining support on pivot columns; sorted by free column.
  std::vector<QRow> kernel;
  std::uint32_t rank() const { return static_cast<std::uint32_t>(pivot_cols.size()); }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(kernel.size()); }
};

// Fraction-free sparse elimination, deterministic pivoting (smallest leading
// column, then sparsest row, then first inserted). Every kernel vector is
// re-verified against the input rows in exact arithmetic.
NullspaceResult nullspace_exact(const SparseMatrix& M);
std::uint32_t rank_exact(const SparseMatrix& M);

// Exact RREF row space over QRows: monic pivots, pivot columns eliminated
// from every other row. For membership and span-rank questions on small
// vector sets.
class RowSpace {
 public:
  explicit RowSpace(std::uint32_t cols) : cols_(cols) {}
  std::uint32_t cols() const { return cols_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
  bool insert(QRow r);  // true when the dimension grew
  QRow reduce(QRow r) const;
  bool contains(QRow r) const { return reduce(std::move(r)).empty(); }

 private:
  std::uint32_t cols_;
  std::vector<QRow> rows_;
  std::map<std::uint32_t, std::size_t> pivot_of_col_;
};

// dst += c * src, sorted-merge on column ids, zero entries dropped.
void qrow_axpy(QRow& dst, const Rat& c, const QRow& src);

// ----- modular layer -----

struct PrimeSet {
  std::vector<std::uint64_t> primes;
  // `count` distinct random 31-bit primes (all > 2^30), derived
  // deterministically from the rng.
  static PrimeSet random_31bit(int count, Rng& rng);
  Int modulus() const;
  std::string to_string() const;
};

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
// Residue of r mod p; ok=false when the denominator vanishes mod p.
std::uint64_t rat_mod(const Rat& r, std::uint64_t p, bool& ok);
std::uint64_t int_mod(const Int& v, std::uint64_t p);

// Incremental row echelon mod p. Rows are inserted one at a time (reduced
// against the current echelon); finalize() back-eliminates to RREF.
class ModRref {
 public:
  ModRref(std::uint32_t cols, std::uint64_t p) : cols_(cols), p_(p) {}
  std::uint64_t prime() const { return p_; }
  std::uint32_t cols() const { return cols_; }
  bool insert(MRow row);  // true when rank grew
  void finalize();
  std::uint32_t rank() const { return static_cast<std::uint32_t>(rows_.size()); }
  std::vector<std::uint32_t> pivot_cols() const;  // ascending
  // RREF row whose pivot is `col` (monic), or nullptr.
  const MRow* row_for_pivot(std::uint32_t col) const;

 private:
  std::uint32_t cols_;
  std::uint64_t p_;
  std::vector<MRow> rows_;
  std::map<std::uint32_t, std::size_t> pivot_of_col_;
  bool finalized_ = false;
};

// Chinese remainders: value in [0, prod primes) matching all residues.
Int crt(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& primes);
// Extended-Euclid rational reconstruction with |num|, den <= sqrt(M/2).
bool rational_reconstruct(const Int& value, const Int& modulus, Rat& out);
// residues[i] = entry mod primes[i] -> rational, verified by re-reduction
// against every prime. Throws reconstruction_error on failure.
Rat reconstruct_entry(const std::vector<std::uint64_t>& residues, const PrimeSet& ps);

struct ModKernelResult {
  std::uint32_t cols = 0;
  std::vector<std::uint32_t> pivot_cols;
  std::vector<QRow> kernel;  // canonical form, rational entries
  std::uint32_t dim() const { return static_cast<std::uint32_t>(kernel.size()); }
};

// Requires identical pivot sets across the (finalized) per-prime echelons;
// reconstructs the canonical kernel rationally. Throws certification_error
// on pivot disagreement and reconstruction_error when lifting fails.
ModKernelResult reconstruct_kernel(std::vector<ModRref>& rrefs, const PrimeSet& ps);

struct ModularRankResult {
  std::vector<std::int64_t> per_prime;  // -1 when a denominator met the prime
  std::uint32_t rank = 0;               // max over usable primes
  bool all_agree = true;
};

// Rank mod each prime (max wins: a lucky prime can only see the true rank,
// an unlucky one undershoots). Rows whose denominators meet a prime are a
// hard error for that prime.
ModularRankResult rank_modular(const SparseMatrix& M, const PrimeSet& ps);

}  // namespace tpres
