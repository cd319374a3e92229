#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rigidlab/bits.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/rational.hpp"

namespace rigidlab {

// Probe callback handed to a query executor. Returns the w-bit cell content,
// or nullopt when the cell is unavailable (Bob's simulation outside the
// sampled set); executors must abort with nullopt on the first failed probe,
// which is what makes the restricted simulation sound even for adaptive
// executors.
using ProbeFn = std::function<std::optional<std::uint64_t>(int)>;

// Toy cell-probe machine for the vector-matrix-vector problem: s cells of w
// bits built from the matrix, and a deterministic executor answering (u, v)
// through a traced probe oracle.
struct CellProbeDS {
  std::string name;
  int root = 0;   // matrix side length, n = root^2
  int cells = 0;  // s
  int word_bits = 0;  // w
  int time = 0;       // declared max probes per query
  std::function<std::vector<std::uint64_t>(const BitMatrix&)> build;
  std::function<std::optional<int>(const BitVector&, const BitVector&,
                                   const ProbeFn&)>
      execute;
};

// Cells are the matrix rows; the executor probes row i for each u[i] = 1 and
// XORs the row-vector inner products.
CellProbeDS make_row_store(int root);

// Cells are the n matrix entries plus one precomputed total parity, answered
// entry by entry with an all-ones shortcut through the parity cell.
CellProbeDS make_verbatim_parity(int root);

CellProbeDS make_machine(const std::string& name, int root);

struct TraceResult {
  int answer = 0;
  std::vector<int> probed;  // distinct cells, ascending
};

TraceResult trace_query(const CellProbeDS& ds,
                        const std::vector<std::uint64_t>& contents,
                        const BitVector& u, const BitVector& v);

// 2 Pr[correct] - 1 over uniform (u, v), exact.
Rational per_matrix_advantage(const CellProbeDS& ds, const BitMatrix& m);

// Per-matrix advantages indexed by matrix code (vec(M) as an integer).
struct BiasLedger {
  int root = 0;
  std::vector<Rational> per_matrix;
  Rational global;
};

BiasLedger compute_ledger(const CellProbeDS& ds, const Caps& caps = {});

// E_{u,v} (-1)^(u^T M v); equals 2^-rank(M). Enumerated exactly for
// root <= 5, by the rank formula beyond.
Rational bias(const BitMatrix& m);

// E_M bias(M)^k over all root x root matrices, via rank-distribution counts.
Rational moment(int root, int k, const Caps& caps = {});

// moment(root, k) <= 2 * 2^(-9 k root / 20).
bool moment_bound_check(int root, int k, const Caps& caps = {});

// Exact count of root x root matrices of rank <= k; always <= 2^(2 k root).
unsigned long long count_low_rank(int root, int k, const Caps& caps = {});

// E over uniform (M, tuple) of A(M) * B(tuple) * (-1)^(sum_i u_i^T M v_i).
using PairTuple = std::vector<std::pair<BitVector, BitVector>>;
Rational rectangle_discrepancy(int root, int k,
                               const std::vector<BitMatrix>& a_side,
                               const std::vector<PairTuple>& b_side);

// Adds one cell holding a flip bit so the per-matrix success is >= 1/2 for
// every matrix; costs one cell and one probe.
CellProbeDS majority_flip(const CellProbeDS& ds);

struct SampleResult {
  std::vector<int> cells;  // S, ascending
  std::vector<std::pair<BitVector, BitVector>> q1;  // in S, answered right
  std::vector<std::pair<BitVector, BitVector>> q2;  // in S, answered wrong
  Rational margin;          // Pr[Q1'] - Pr[Q2']
  bool hypotheses_hold = false;  // cell-sampling lemma regime flag
};

// Seeded randomized search over `trials` uniform size-subsets, returning the
// subset maximizing the margin. The lemma's margin guarantee is asserted by
// callers only when hypotheses_hold.
SampleResult cell_sample(const CellProbeDS& ds, const BitMatrix& m, int size,
                         int trials, std::uint64_t seed);

struct ProtocolMessage {
  int b = 0;                       // majority bit, ties toward 0
  std::vector<int> cell_indices;   // S
  std::vector<std::uint64_t> contents;
  unsigned long long location_rank = 0;  // colex rank of S among size-subsets
  long long total_bits = 0;  // 1 + |S| w + ceil(log2 C(s, |S|))
};

struct ProtocolResult {
  ProtocolMessage msg;
  Rational success;  // exact Pr over uniform (u, v) of Bob being correct
  // The closed-form accounting the measured success must equal:
  // Pr[q in Q' and DS correct] + max majority mass outside Q'.
  Rational accounting_identity;
};

// Figure-of-merit one-way protocol: Alice sends the majority bit plus the
// locations and contents of S; Bob simulates the executor against S and
// falls back to the majority bit on the first probe outside S.
ProtocolResult run_protocol(const CellProbeDS& ds, const BitMatrix& m,
                            const SampleResult& sample);

struct MessageBits {
  long long exact = 0;  // 1 + size*w + ceil(log2 C(s, size))
  double bound = 0;     // 1 + size*w + size*log2(e*s/size)
};

MessageBits message_bits(int s, int w, int size);

// Colexicographic subset rank in the combinatorial number system; fixes the
// location encoding so message sizes are bit-exact and reproducible.
unsigned long long subset_colex_rank(const std::vector<int>& sorted_cells);

struct DirectSumResult {
  Rational success;          // (1 + E_M[adv^k]) / 2
  Rational convexity_floor;  // (1 + (E_M adv)^k) / 2, never above success
};

// Success of answering the XOR of k independent queries; requires all
// per-matrix advantages non-negative (apply majority_flip first).
DirectSumResult direct_sum_success(const BiasLedger& ledger, int k);

// Matrix <-> integer code (vec(M) with coordinate 1 as bit 0).
BitMatrix matrix_from_code(int root, std::uint64_t code);
std::uint64_t matrix_code(const BitMatrix& m);

}  // namespace rigidlab
