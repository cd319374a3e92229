#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rigidlab/bits.hpp"
#include "rigidlab/errors.hpp"

namespace rigidlab {

// Ordered list of distinct queries in F_2^n. Order is the insertion order of
// generation so reports are reproducible; equality is set equality.
struct QuerySet {
  int n = 0;
  std::vector<BitVector> vectors;
  std::string name;

  int size() const { return static_cast<int>(vectors.size()); }
  bool same_elements(const QuerySet& o) const;
};

// {vec(u v^T) : u, v in F_2^root}, duplicates removed; includes the zero
// vector, so the distinct count is (2^root - 1)^2 + 1.
QuerySet gen_upsilon(int root, const Caps& caps = {});

// {1^i 0^(n-i) : 1 <= i <= n}.
QuerySet gen_prefix(int n);

// m distinct uniform vectors, reproducible from seed.
QuerySet gen_random(int n, int m, std::uint64_t seed);

// Whether the four-query sum u^T M v + (u+e_i)^T M v + u^T M (v+e_j) +
// (u+e_i)^T M (v+e_j) equals M[i][j]. Indices are 0-based. The sum always
// telescopes to M[i][j]; this exists as an executable witness.
bool four_query_identity(const BitMatrix& m, const BitVector& u,
                         const BitVector& v, int i, int j);

// Text format: one 0/1 string per line, coordinate 1 leftmost, '#' starts a
// comment line. Loaders reject ragged lines and duplicates with line numbers.
QuerySet load_queryset(const std::string& path);
void save_queryset(const QuerySet& q, const std::string& path);

// Resolve "builtin:upsilon:<root>", "builtin:prefix:<n>",
// "builtin:random:<n>:<m>:<seed>", or a file path.
QuerySet resolve_queryset(const std::string& uri, const Caps& caps = {});

}  // namespace rigidlab
