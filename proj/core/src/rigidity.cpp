#include "rigidlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace rigidlab {

RigidityReport rigidity_value(const QuerySet& q, int r, const Caps& caps) {
  if (r < 0 || r > q.n) throw std::invalid_argument("need 0 <= r <= n");
  RigidityReport report;
  report.n = q.n;
  report.r = r;
  report.value = std::numeric_limits<int>::max();
  SubspaceEnumerator en(q.n, r, caps);
  while (auto u = en.next()) {
    ++report.subspaces_scanned;
    int worst = 0;
    BitVector worst_q;
    for (const auto& query : q.vectors) {
      int d = distance_to_subspace(query, *u, caps.max_coset_dim);
      if (d > worst) {
        worst = d;
        worst_q = query;
      }
      if (worst >= report.value) break;  // cannot improve the running min
    }
    if (worst < report.value) {
      report.value = worst;
      report.witness = *u;
      // Re-derive the argmax without the early cutoff.
      report.argmax_query = q.vectors.front();
      int best_d = -1;
      for (const auto& query : q.vectors) {
        int d = distance_to_subspace(query, *u, caps.max_coset_dim);
        if (d > best_d) {
          best_d = d;
          report.argmax_query = query;
        }
      }
    }
  }
  return report;
}

bool is_rigid(const QuerySet& q, double r, double t, const Caps& caps) {
  int ri = static_cast<int>(std::floor(r));
  int ti = static_cast<int>(std::ceil(t));
  if (ti <= 0) return true;
  return rigidity_value(q, ri, caps).value >= ti;
}

QuerySet fold_set(const QuerySet& s, int r) {
  if (r < 1 || 2 * r > s.n)
    throw std::invalid_argument("need 1 <= 2r <= n");
  int block = 2 * r;
  int k = s.n / block;
  QuerySet out;
  out.n = block;
  out.name = s.name + "/fold:" + std::to_string(r);
  std::set<BitVector> seen;
  auto add = [&](const BitVector& v) {
    if (seen.insert(v).second) out.vectors.push_back(v);
  };
  for (int i = 0; i < k; ++i)
    for (const auto& v : s.vectors) {
      BitVector p(block);
      for (int j = 0; j < block; ++j) p.set(j, v.get(i * block + j));
      add(p);
    }
  if (s.n % block != 0)
    for (const auto& v : s.vectors) {
      BitVector p(block);
      for (int j = k * block; j < s.n; ++j) p.set(j - k * block, v.get(j));
      add(p);
    }
  return out;
}

FarPointResult find_far_point(const std::vector<std::vector<BitVector>>& sets,
                              int len, const Caps& caps) {
  if (len < 1 || len > caps.max_input_log2)
    throw CapExceeded("2^" + std::to_string(len) +
                      " far-point scan exceeds input cap 2^" +
                      std::to_string(caps.max_input_log2));
  if (sets.empty()) throw std::invalid_argument("need at least one set");
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("sets must be non-empty");
    for (const auto& v : s)
      if (v.size() != len)
        throw std::invalid_argument("set elements must lie in F_2^len");
  }

  FarPointResult res;
  res.min_distance = -1;
  std::uint64_t space = std::uint64_t(1) << len;
  for (std::uint64_t code = 0; code < space; ++code) {
    BitVector v = BitVector::from_bits(len, code);
    int worst = std::numeric_limits<int>::max();
    for (const auto& s : sets) {
      int d = std::numeric_limits<int>::max();
      for (const auto& elem : s)
        d = std::min(d, (v ^ elem).weight());
      worst = std::min(worst, d);
      if (worst <= res.min_distance) break;
    }
    if (worst > res.min_distance) {  // strict: ascending scan keeps smallest v
      res.min_distance = worst;
      res.point = v;
    }
  }

  double k = static_cast<double>(sets.size());
  bool sizes_ok = true;
  for (const auto& s : sets)
    if (std::log2(static_cast<double>(s.size())) > len / 2.0) sizes_ok = false;
  res.hypotheses_hold = sizes_ok && k < std::exp2(len / 4.0);
  return res;
}

FarRankOneResult find_far_rank_one(const Subspace& v_space, int n,
                                   const Caps& caps) {
  int root = perfect_isqrt(n);
  if (n < 4) throw std::invalid_argument("need n >= 4");
  if (v_space.ambient_dim() != n)
    throw std::invalid_argument("subspace ambient dimension must equal n");
  int r = v_space.dim();
  int r_prime = ((std::max(r, 1) + root - 1) / root) * root;
  int block = 2 * r_prime;
  if (block > n)
    throw std::invalid_argument("2r' exceeds n; construction needs dim <= n/2");

  int k = std::max(n / block, 1);
  std::vector<std::vector<BitVector>> projections;
  std::vector<Subspace> proj_spaces;
  for (int i = 0; i < k; ++i) {
    std::vector<int> coords(block);
    for (int j = 0; j < block; ++j) coords[j] = i * block + j;
    Subspace p = v_space.project(coords);
    projections.push_back(p.elements(caps.max_coset_dim));
    proj_spaces.push_back(std::move(p));
  }

  FarPointResult far = find_far_point(projections, block, caps);

  FarRankOneResult res;
  res.r_prime = r_prime;
  res.copies = k;
  res.block_distance_sum = 0;
  for (const auto& p : proj_spaces)
    res.block_distance_sum +=
        distance_to_subspace(far.point, p, caps.max_coset_dim);

  BitVector tiled(n);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < block; ++j)
      if (far.point.get(j)) tiled.set(i * block + j, true);

  auto [a_fac, b_fac] = rank_factorize(mat(tiled));
  int rho = a_fac.cols();
  if (rho == 0) {
    res.a = BitVector(root);
    res.b = BitVector(root);
    res.certified = 0;
    return res;
  }
  res.certified = -1;
  for (int i = 0; i < rho; ++i) {
    BitVector a = a_fac.column(i);
    BitVector b = b_fac.row(i);
    int d = distance_to_subspace(vec(outer(a, b)), v_space, caps.max_coset_dim);
    if (d > res.certified) {
      res.certified = d;
      res.a = std::move(a);
      res.b = std::move(b);
    }
  }
  return res;
}

Rational average_distance(const QuerySet& q, const Subspace& u,
                          const Caps& caps) {
  long sum = 0;
  for (const auto& query : q.vectors)
    sum += distance_to_subspace(query, u, caps.max_coset_dim);
  return rat(sum, q.size());
}

StrongRigidityReport strong_rigidity_value(const QuerySet& q, int r,
                                           const Caps& caps) {
  if (r < 0 || r > q.n) throw std::invalid_argument("need 0 <= r <= n");
  StrongRigidityReport report;
  bool first = true;
  SubspaceEnumerator en(q.n, r, caps);
  while (auto u = en.next()) {
    ++report.subspaces_scanned;
    Rational avg = average_distance(q, *u, caps);
    if (first || avg < report.value) {
      first = false;
      report.value = avg;
      report.witness = *u;
    }
  }
  return report;
}

}  // namespace rigidlab
