#include "rigidlab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace rigidlab {
namespace {

// Elimination with pivot bookkeeping; shared by rref/rank/factorize.
std::pair<BitMatrix, std::vector<int>> rref_with_pivots(const BitMatrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));

  std::vector<int> pivots;
  int next_row = 0;
  for (int col = 0; col < m.cols() && next_row < static_cast<int>(rows.size());
       ++col) {
    int pivot = -1;
    for (int i = next_row; i < static_cast<int>(rows.size()); ++i)
      if (rows[i].get(col)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[next_row], rows[pivot]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != next_row && rows[i].get(col)) rows[i] ^= rows[next_row];
    pivots.push_back(col);
    ++next_row;
  }
  rows.resize(next_row, BitVector(m.cols()));
  BitMatrix out = BitMatrix::from_rows(std::move(rows));
  if (out.rows() == 0) out = BitMatrix(0, m.cols());
  return {out, pivots};
}

}  // namespace

BitMatrix rref(const BitMatrix& m) { return rref_with_pivots(m).first; }

int rank(const BitMatrix& m) {
  return static_cast<int>(rref_with_pivots(m).second.size());
}

std::pair<BitMatrix, BitMatrix> rank_factorize(const BitMatrix& m) {
  auto [b, pivots] = rref_with_pivots(m);
  int rho = static_cast<int>(pivots.size());
  BitMatrix a(m.rows(), rho);
  // Rows of m are combinations of RREF rows; since the RREF is the identity
  // on its pivot columns, the coefficients are read off directly.
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < rho; ++j) a.set(i, j, m.get(i, pivots[j]));
  return {a, b};
}

std::optional<BitVector> solve_linear(const BitMatrix& a, const BitVector& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("rhs length must equal constraint count");
  std::vector<BitVector> rows;
  std::vector<bool> aug(a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    rows.push_back(a.row(i));
    aug[i] = b.get(i);
  }
  std::vector<int> pivots;
  int next_row = 0;
  for (int col = 0; col < a.cols() && next_row < static_cast<int>(rows.size());
       ++col) {
    int pivot = -1;
    for (int i = next_row; i < static_cast<int>(rows.size()); ++i)
      if (rows[i].get(col)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[next_row], rows[pivot]);
    std::swap(aug[next_row], aug[pivot]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != next_row && rows[i].get(col)) {
        rows[i] ^= rows[next_row];
        aug[i] = aug[i] != aug[next_row];
      }
    pivots.push_back(col);
    ++next_row;
  }
  for (int i = next_row; i < static_cast<int>(rows.size()); ++i)
    if (aug[i]) return std::nullopt;  // 0 = 1 row: inconsistent
  BitVector x(a.cols());
  for (int i = 0; i < next_row; ++i) x.set(pivots[i], aug[i]);
  return x;
}

Subspace Subspace::from_basis(int ambient_dim, const BitMatrix& rows) {
  if (rows.rows() > 0 && rows.cols() != ambient_dim)
    throw std::invalid_argument("basis width must equal ambient dimension");
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = rows.rows() > 0 ? rref(rows) : BitMatrix(0, ambient_dim);
  if (s.basis_.rows() == 0) s.basis_ = BitMatrix(0, ambient_dim);
  return s;
}

Subspace Subspace::from_span(int ambient_dim, const std::vector<BitVector>& vs) {
  if (vs.empty()) return zero(ambient_dim);
  return from_basis(ambient_dim, BitMatrix::from_rows(vs));
}

Subspace Subspace::zero(int ambient_dim) {
  Subspace s;
  s.ambient_ = ambient_dim;
  s.basis_ = BitMatrix(0, ambient_dim);
  return s;
}

Subspace Subspace::full(int ambient_dim) {
  return from_basis(ambient_dim, BitMatrix::identity(ambient_dim));
}

bool Subspace::contains(const BitVector& v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("vector length must equal ambient dimension");
  BitVector residue = v;
  for (int i = 0; i < basis_.rows(); ++i) {
    int lead = basis_.row(i).lowest_set();
    if (residue.get(lead)) residue ^= basis_.row(i);
  }
  return residue.is_zero();
}

Subspace Subspace::extended(const std::vector<BitVector>& extra) const {
  std::vector<BitVector> rows;
  for (int i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
  for (const auto& v : extra) rows.push_back(v);
  return from_span(ambient_, rows);
}

std::vector<BitVector> Subspace::elements(int dim_cap) const {
  if (dim() > dim_cap)
    throw CapExceeded("subspace has dimension " + std::to_string(dim()) +
                      ", element cap is " + std::to_string(dim_cap));
  std::vector<BitVector> out;
  out.reserve(std::size_t(1) << dim());
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << dim()); ++mask) {
    BitVector v(ambient_);
    for (int i = 0; i < dim(); ++i)
      if ((mask >> i) & 1) v ^= basis_.row(i);
    out.push_back(std::move(v));
  }
  return out;
}

Subspace Subspace::project(const std::vector<int>& coords) const {
  std::vector<BitVector> rows;
  for (int i = 0; i < basis_.rows(); ++i) {
    BitVector r(static_cast<int>(coords.size()));
    for (std::size_t j = 0; j < coords.size(); ++j)
      r.set(static_cast<int>(j), basis_.row(i).get(coords[j]));
    rows.push_back(std::move(r));
  }
  return from_span(static_cast<int>(coords.size()), rows);
}

bool span_contains(const Subspace& u, const BitVector& v) {
  return u.contains(v);
}

unsigned long long gaussian_binomial(int n, int r, unsigned long long cap) {
  if (r < 0 || r > n) return 0;
  // Pascal recurrence G(n,r) = G(n-1,r-1) + 2^r * G(n-1,r), saturating.
  constexpr unsigned long long kSat = ~0ull;
  std::vector<unsigned long long> g(r + 1, 0);
  g[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(r, i); j >= 1; --j) {
      unsigned __int128 v = g[j - 1];
      v += (unsigned __int128)g[j] << j;
      g[j] = v > kSat ? kSat : (unsigned long long)v;
    }
  }
  if (g[r] > cap)
    throw CapExceeded("subspace enumeration of size " +
                      (g[r] == kSat ? std::string(">= 2^64")
                                    : std::to_string(g[r])) +
                      " exceeds cap " + std::to_string(cap));
  return g[r];
}

SubspaceEnumerator::SubspaceEnumerator(int n, int r, const Caps& caps)
    : n_(n), r_(r) {
  if (r < 0 || r > n)
    throw std::invalid_argument("need 0 <= r <= n");
  total_ = gaussian_binomial(n, r, caps.max_subspaces);
  pivots_.resize(r);
  for (int i = 0; i < r; ++i) pivots_[i] = i;
  rebuild_free_positions();
}

void SubspaceEnumerator::rebuild_free_positions() {
  free_pos_.clear();
  std::vector<bool> is_pivot(n_, false);
  for (int p : pivots_) is_pivot[p] = true;
  for (int i = 0; i < r_; ++i)
    for (int j = pivots_[i] + 1; j < n_; ++j)
      if (!is_pivot[j]) free_pos_.emplace_back(i, j);
  free_bits_.assign(free_pos_.size(), false);
}

bool SubspaceEnumerator::advance_free_bits() {
  for (std::size_t i = 0; i < free_bits_.size(); ++i) {
    if (!free_bits_[i]) {
      free_bits_[i] = true;
      return true;
    }
    free_bits_[i] = false;
  }
  return false;  // wrapped
}

bool SubspaceEnumerator::advance_pivots() {
  if (r_ == 0) return false;
  // Next r-combination of {0..n-1} in lexicographic order.
  int i = r_ - 1;
  while (i >= 0 && pivots_[i] == n_ - r_ + i) --i;
  if (i < 0) return false;
  ++pivots_[i];
  for (int j = i + 1; j < r_; ++j) pivots_[j] = pivots_[j - 1] + 1;
  rebuild_free_positions();
  return true;
}

Subspace SubspaceEnumerator::current() const {
  BitMatrix basis(r_, n_);
  for (int i = 0; i < r_; ++i) basis.set(i, pivots_[i], true);
  for (std::size_t k = 0; k < free_pos_.size(); ++k)
    if (free_bits_[k]) basis.set(free_pos_[k].first, free_pos_[k].second, true);
  Subspace s;
  // Already canonical RREF by construction; bypass re-reduction.
  s = Subspace::from_basis(n_, basis);
  return s;
}

std::optional<Subspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (fresh_) {
    fresh_ = false;
    return current();
  }
  if (advance_free_bits()) return current();
  if (advance_pivots()) return current();
  done_ = true;
  return std::nullopt;
}

int distance_to_subspace(const BitVector& q, const Subspace& u, int dim_cap) {
  if (q.size() != u.ambient_dim())
    throw std::invalid_argument("vector length must equal ambient dimension");
  if (u.dim() > dim_cap)
    throw CapExceeded("coset of dimension " + std::to_string(u.dim()) +
                      " exceeds cap " + std::to_string(dim_cap));
  BitVector cur = q;
  int best = cur.weight();
  std::uint64_t count = std::uint64_t(1) << u.dim();
  for (std::uint64_t i = 1; i < count; ++i) {
    cur ^= u.basis().row(std::countr_zero(i));  // Gray-code step
    best = std::min(best, cur.weight());
  }
  return best;
}

std::pair<BitVector, std::uint64_t> nearest_in_subspace(const BitVector& q,
                                                        const Subspace& u,
                                                        int dim_cap) {
  if (u.dim() > dim_cap)
    throw CapExceeded("coset of dimension " + std::to_string(u.dim()) +
                      " exceeds cap " + std::to_string(dim_cap));
  BitVector cur = q;
  int best = cur.weight();
  std::uint64_t best_mask = 0;
  std::uint64_t count = std::uint64_t(1) << u.dim();
  for (std::uint64_t i = 1; i < count; ++i) {
    cur ^= u.basis().row(std::countr_zero(i));
    std::uint64_t mask = i ^ (i >> 1);  // Gray code of step index
    int w = cur.weight();
    if (w < best || (w == best && mask < best_mask)) {
      best = w;
      best_mask = mask;
    }
  }
  BitVector element(q.size());
  for (int i = 0; i < u.dim(); ++i)
    if ((best_mask >> i) & 1) element ^= u.basis().row(i);
  return {element, best_mask};
}

int perfect_isqrt(int n) {
  int root = 0;
  while (root * root < n) ++root;
  if (root * root != n)
    throw std::invalid_argument(std::to_string(n) + " is not a perfect square");
  return root;
}

BitVector vec(const BitMatrix& m) {
  BitVector v(m.rows() * m.cols());
  for (int a = 0; a < m.rows(); ++a)
    for (int b = 0; b < m.cols(); ++b)
      if (m.get(a, b)) v.set(a * m.cols() + b, true);
  return v;
}

BitMatrix mat(const BitVector& v) {
  int root = perfect_isqrt(v.size());
  BitMatrix m(root, root);
  for (int a = 0; a < root; ++a)
    for (int b = 0; b < root; ++b)
      if (v.get(a * root + b)) m.set(a, b, true);
  return m;
}

}  // namespace rigidlab
