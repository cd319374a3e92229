#include "rigidlab/bits.hpp"

#include <bit>
#include <stdexcept>

#include "rigidlab/errors.hpp"

namespace rigidlab {

BitVector BitVector::from_string(std::string_view s) {
  BitVector v(static_cast<int>(s.size()));
  for (int i = 0; i < v.n_; ++i) {
    char c = s[i];
    if (c == '1')
      v.set(i, true);
    else if (c != '0')
      throw ParseError("vector must consist of '0'/'1' characters");
  }
  return v;
}

BitVector BitVector::unit(int n, int i) {
  BitVector v(n);
  v.set(i, true);
  return v;
}

BitVector BitVector::ones(int n) {
  BitVector v(n);
  for (int i = 0; i < n; ++i) v.set(i, true);
  return v;
}

BitVector BitVector::from_bits(int n, std::uint64_t bits) {
  BitVector v(n);
  for (int i = 0; i < n && i < 64; ++i)
    if ((bits >> i) & 1) v.set(i, true);
  return v;
}

int BitVector::weight() const {
  int w = 0;
  for (auto word : words_) w += std::popcount(word);
  return w;
}

bool BitVector::is_zero() const {
  for (auto word : words_)
    if (word) return false;
  return true;
}

int BitVector::dot(const BitVector& o) const {
  int parity = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    parity ^= std::popcount(words_[i] & o.words_[i]) & 1;
  return parity;
}

int BitVector::lowest_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
  return -1;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

std::strong_ordering BitVector::operator<=>(const BitVector& o) const {
  if (auto c = n_ <=> o.n_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;)
    if (auto c = words_[i] <=> o.words_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::vector<int> BitVector::support() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (get(i)) out.push_back(i);
  return out;
}

std::string BitVector::str() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows) {
  BitMatrix m;
  if (!rows.empty()) m.cols_ = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m.cols_)
      throw std::invalid_argument("matrix rows must have identical length");
  m.rows_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVector> rs;
  rs.reserve(rows.size());
  for (const auto& s : rows) rs.push_back(BitVector::from_string(s));
  return from_rows(std::move(rs));
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

void BitMatrix::append_row(BitVector r) {
  if (rows_.empty() && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_)
    throw std::invalid_argument("matrix rows must have identical length");
  rows_.push_back(std::move(r));
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (cols_ != o.rows())
    throw std::invalid_argument("inner dimensions must agree");
  BitMatrix out(rows(), o.cols());
  for (int i = 0; i < rows(); ++i)
    for (int k = 0; k < cols_; ++k)
      if (get(i, k)) out.rows_[i] ^= o.rows_[k];
  return out;
}

BitVector BitMatrix::mul(const BitVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
  BitVector out(rows());
  for (int i = 0; i < rows(); ++i) out.set(i, rows_[i].dot(x));
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows());
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j)) out.set(j, i, true);
  return out;
}

BitVector BitMatrix::column(int j) const {
  BitVector out(rows());
  for (int i = 0; i < rows(); ++i) out.set(i, get(i, j));
  return out;
}

BitMatrix outer(const BitVector& u, const BitVector& v) {
  BitMatrix m(u.size(), v.size());
  for (int i = 0; i < u.size(); ++i)
    if (u.get(i)) m.row(i) = v;
  return m;
}

}  // namespace rigidlab
