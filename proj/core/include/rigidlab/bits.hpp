#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rigidlab {

// Bit-packed element of F_2^n. Coordinate 1 is the leftmost character of the
// serialized form and the lowest bit index internally; the C++ API is
// 0-based (coordinate i+1 <-> index i).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitVector from_string(std::string_view s);
  static BitVector unit(int n, int i);  // e_{i+1}
  static BitVector ones(int n);
  // Low 64 coordinates from an integer, coordinate 1 = bit 0.
  static BitVector from_bits(int n, std::uint64_t bits);

  int size() const { return n_; }
  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool b) {
    std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (b)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(int i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  int weight() const;
  bool is_zero() const;
  int dot(const BitVector& o) const;  // inner product mod 2
  int lowest_set() const;             // -1 if zero

  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool operator==(const BitVector&) const = default;
  // Length-major, then numeric value (coordinate 1 least significant).
  std::strong_ordering operator<=>(const BitVector& o) const;

  std::vector<int> support() const;  // 0-based set coordinates, ascending
  std::uint64_t low_bits() const { return words_.empty() ? 0 : words_[0]; }
  std::string str() const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row list over F_2; all rows share one length. Zero-row matrices keep their
// column count.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BitMatrix from_rows(std::vector<BitVector> rows);
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix identity(int n);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const BitVector& row(int i) const { return rows_[i]; }
  BitVector& row(int i) { return rows_[i]; }
  bool get(int i, int j) const { return rows_[i].get(j); }
  void set(int i, int j, bool b) { rows_[i].set(j, b); }
  void append_row(BitVector r);

  BitMatrix operator*(const BitMatrix& o) const;
  BitVector mul(const BitVector& x) const;  // matrix-vector product
  BitMatrix transposed() const;
  BitVector column(int j) const;

  bool operator==(const BitMatrix&) const = default;

 private:
  int cols_ = 0;
  std::vector<BitVector> rows_;
};

// Outer product u v^T as a |u| x |v| matrix.
BitMatrix outer(const BitVector& u, const BitVector& v);

}  // namespace rigidlab
