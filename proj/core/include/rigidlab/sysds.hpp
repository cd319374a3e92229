#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidlab/errors.hpp"
#include "rigidlab/gf2.hpp"
#include "rigidlab/queryset.hpp"

namespace rigidlab {

// Per-query evaluation recipe: which redundancy bits enter the output and
// which input coordinates are probed. Validity: q == u_q + sum of e_i over
// probes, where u_q is the coeffs-selected basis combination.
struct Plan {
  std::uint64_t coeffs = 0;  // bit i selects redundancy basis row i
  std::vector<int> probes;   // 0-based coordinates, ascending
};

// Systematic linear data structure: input stored verbatim plus r precomputed
// inner products with a fixed redundancy basis. The redundancy vectors are
// input-independent; construction takes a subspace, never the data.
struct SystematicLinearDS {
  int n = 0;
  Subspace redundancy;
  std::map<BitVector, Plan> plans;

  int redundancy_dim() const { return redundancy.dim(); }
  int time() const;  // max probe count over all plans
  BitVector plan_element(const Plan& p) const;  // u_q from coeffs
};

// For each query: nearest subspace element (canonical tie-break), probes =
// support of the residue. The resulting time equals max_q d_H(q, U).
SystematicLinearDS build_plan(const QuerySet& q, const Subspace& u,
                              const Caps& caps = {});

// <u_q, v> from the redundancy bits plus the probed coordinates of v.
int answer(const SystematicLinearDS& ds, const BitVector& v,
           const BitVector& q);

struct VerifyResult {
  bool ok = true;
  BitVector failing_v, failing_q;  // first counterexample when !ok
};

// answer(ds, v, q) == <q, v> for every v in F_2^n and q in the set.
VerifyResult verify_exhaustive(const SystematicLinearDS& ds, const QuerySet& q,
                               const Caps& caps = {});

// Optimal systematic-linear time: min over dim-r subspaces of max_q d_H(q,U).
// Distances here come from scanning materialized subspace elements, a route
// independent of the coset walk used by the rigidity module.
int t_direct(const QuerySet& q, int r, const Caps& caps = {});

struct AdversaryWitness {
  BitVector q_star;
  BitVector y;  // <y, q_star> = 1, y orthogonal to basis and declared probes
  std::vector<int> declared_probes;
};

// The fooling vector of the lower-bound direction: if q_star lies outside
// U' = span(basis, e_i for declared probes), any algorithm reading only the
// redundancy bits and declared probes sees identical values on v and v+y
// while the true answers differ. Absence means the probe budget suffices.
std::optional<AdversaryWitness> extract_adversary(
    int n, const Subspace& basis, const BitVector& q_star,
    const std::vector<int>& declared_probes);

struct LinearQueryPlan {
  std::vector<int> reads;       // cell indices read (all r redundancy + probes)
  std::vector<int> out_coeffs;  // subset of reads XORed into the output
};

// Non-systematic linear model: n + r stored functionals (redundancy vectors
// first, then the coordinate functionals), every read charged.
struct LinearDS {
  int n = 0;
  int r = 0;
  std::vector<BitVector> stored;
  std::map<BitVector, LinearQueryPlan> queries;

  int max_read() const;
};

// Storage = redundancy functionals followed by coordinate functionals; each
// query reads all r redundancy cells plus its probe set, so reads <= t + r.
LinearDS to_linear_model(const SystematicLinearDS& ds);

int linear_answer(const LinearDS& ds, const BitVector& v, const BitVector& q);

// JSON round-trip: basis rows as 0/1 strings, plans as {coeffs, probes[]}
// with 1-based probe coordinates.
std::string ds_to_json(const SystematicLinearDS& ds);
SystematicLinearDS ds_from_json(const std::string& text);

}  // namespace rigidlab
