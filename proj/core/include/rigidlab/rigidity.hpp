#pragma once

#include <vector>

#include "rigidlab/errors.hpp"
#include "rigidlab/gf2.hpp"
#include "rigidlab/queryset.hpp"
#include "rigidlab/rational.hpp"

namespace rigidlab {

struct RigidityReport {
  int n = 0;
  int r = 0;
  int value = 0;           // min over dim-r subspaces of max_q d_H(q, U)
  Subspace witness;        // first minimizer in canonical order
  BitVector argmax_query;  // first q attaining the max distance to witness
  unsigned long long subspaces_scanned = 0;
};

// RIG(Q, r). Minimizing over dimension exactly r suffices for dim <= r:
// growing a subspace never increases any distance, and every smaller
// subspace extends to dimension r.
RigidityReport rigidity_value(const QuerySet& q, int r, const Caps& caps = {});

// (r, t)-rigidity for non-integral parameters: (floor(r), ceil(t))-rigid.
bool is_rigid(const QuerySet& q, double r, double t, const Caps& caps = {});

// Projects S onto consecutive length-2r blocks (zero-padded tail block when
// 2r does not divide n) and unions the projections, dropping duplicates.
QuerySet fold_set(const QuerySet& s, int r);

struct FarPointResult {
  BitVector point;   // maximizer of min_i d_H(v, V_i), smallest on ties
  int min_distance;  // the achieved min over the sets
  // True when |V_i| <= 2^(len/2) for all i and k < 2^(len/4); under these
  // hypotheses min_distance >= ceil(len/16) is guaranteed.
  bool hypotheses_hold;
};

// Exhaustive scan of F_2^len. Every set must be non-empty.
FarPointResult find_far_point(const std::vector<std::vector<BitVector>>& sets,
                              int len, const Caps& caps = {});

struct FarRankOneResult {
  BitVector a, b;          // rank-one component vec(a b^T) far from v_space
  int certified;           // exact d_H(vec(a b^T), v_space)
  int block_distance_sum;  // sum over blocks of d_H(v', projected space)
  int r_prime;             // dim rounded up to a multiple of sqrt(n), >= sqrt(n)
  int copies;              // number of tiled copies of the block far point
};

// Block-projection construction: find a far point v' of length 2r' against
// the block projections of v_space, tile it, factor the tiled vector's
// matrix, and return the rank-one component farthest from v_space. The
// certificate satisfies
//   certified >= ceil(block_distance_sum * sqrt(n) / (2 r')).
FarRankOneResult find_far_rank_one(const Subspace& v_space, int n,
                                   const Caps& caps = {});

// (1/m) sum_q d_H(q, U), exact.
Rational average_distance(const QuerySet& q, const Subspace& u,
                          const Caps& caps = {});

struct StrongRigidityReport {
  Rational value;
  Subspace witness;
  unsigned long long subspaces_scanned = 0;
};

// Min over dim-r subspaces of the average distance; average <= max, so this
// never exceeds rigidity_value.
StrongRigidityReport strong_rigidity_value(const QuerySet& q, int r,
                                           const Caps& caps = {});

}  // namespace rigidlab
