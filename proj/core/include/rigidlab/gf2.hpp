#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rigidlab/bits.hpp"
#include "rigidlab/errors.hpp"

namespace rigidlab {

// Unique reduced row-echelon form; zero rows removed, row space preserved.
BitMatrix rref(const BitMatrix& m);

int rank(const BitMatrix& m);

// m == A*B with A rows x rho, B rho x cols, rho = rank(m). Equivalently
// m is the sum of rho outer products (column i of A)(row i of B)^T.
std::pair<BitMatrix, BitMatrix> rank_factorize(const BitMatrix& m);

// Some x with a*x == b, or nullopt if the system is inconsistent. Free
// variables are set to zero, so the result is canonical.
std::optional<BitVector> solve_linear(const BitMatrix& a, const BitVector& b);

// Subspace of F_2^n held as an RREF basis with zero rows dropped; equality is
// basis equality, which makes the representation canonical.
class Subspace {
 public:
  Subspace() = default;
  static Subspace from_basis(int ambient_dim, const BitMatrix& rows);
  static Subspace from_span(int ambient_dim, const std::vector<BitVector>& vs);
  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const BitMatrix& basis() const { return basis_; }

  bool contains(const BitVector& v) const;
  // Span of this basis together with extra vectors.
  Subspace extended(const std::vector<BitVector>& extra) const;
  // All 2^dim elements in counting order over basis-combination masks.
  std::vector<BitVector> elements(int dim_cap = 24) const;
  // Coordinates restricted to the given index list (in order).
  Subspace project(const std::vector<int>& coords) const;

  bool operator==(const Subspace&) const = default;

 private:
  int ambient_ = 0;
  BitMatrix basis_;  // RREF, no zero rows
};

bool span_contains(const Subspace& u, const BitVector& v);

// Gaussian binomial [n choose r]_2; throws CapExceeded beyond cap.
unsigned long long gaussian_binomial(int n, int r, unsigned long long cap);

// Streams every dimension-r subspace of F_2^n exactly once, in canonical
// order: pivot-column sets lexicographic, then free entries counting up
// (row-major free positions, lowest counter bit first). The order is part of
// the contract so partitioned scans and reruns agree.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(int n, int r, const Caps& caps = {});
  std::optional<Subspace> next();
  unsigned long long total() const { return total_; }

 private:
  bool advance_free_bits();
  bool advance_pivots();
  void rebuild_free_positions();
  Subspace current() const;

  int n_, r_;
  unsigned long long total_;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_pos_;  // (row, col), row-major
  std::vector<bool> free_bits_;
  bool done_ = false;
  bool fresh_ = true;
};

// Exact min Hamming distance from q to the coset q+U by a Gray-code walk
// over all 2^dim coset elements.
int distance_to_subspace(const BitVector& q, const Subspace& u,
                         int dim_cap = 24);

// Nearest coset element together with the basis-combination mask producing
// it. Ties broken by the numerically smallest mask.
std::pair<BitVector, std::uint64_t> nearest_in_subspace(const BitVector& q,
                                                        const Subspace& u,
                                                        int dim_cap = 24);

// Row-concatenation bijection between sqrt(n) x sqrt(n) matrices and n-bit
// vectors: vec(M)[(a-1)*sqrt(n)+b] = M[a,b].
BitVector vec(const BitMatrix& m);
BitMatrix mat(const BitVector& v);

// Exact integer square root for perfect squares; throws otherwise.
int perfect_isqrt(int n);

}  // namespace rigidlab
