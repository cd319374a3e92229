#include "rigidlab/commsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "rigidlab/gf2.hpp"

namespace rigidlab {
namespace {

unsigned __int128 binom128(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 0; i < k; ++i) {
    c *= static_cast<unsigned>(n - i);
    c /= static_cast<unsigned>(i + 1);
  }
  return c;
}

int ceil_log2_u128(unsigned __int128 v) {
  int k = 0;
  while ((static_cast<unsigned __int128>(1) << k) < v) ++k;
  return k;
}

int truth_bit(const BitMatrix& m, const BitVector& u, const BitVector& v) {
  return u.dot(m.mul(v));
}

}  // namespace

BitMatrix matrix_from_code(int root, std::uint64_t code) {
  return mat(BitVector::from_bits(root * root, code));
}

std::uint64_t matrix_code(const BitMatrix& m) { return vec(m).low_bits(); }

CellProbeDS make_row_store(int root) {
  CellProbeDS ds;
  ds.name = "row-store";
  ds.root = root;
  ds.cells = root;
  ds.word_bits = root;
  ds.time = root;
  ds.build = [root](const BitMatrix& m) {
    std::vector<std::uint64_t> cells(root);
    for (int i = 0; i < root; ++i) cells[i] = m.row(i).low_bits();
    return cells;
  };
  ds.execute = [root](const BitVector& u, const BitVector& v,
                      const ProbeFn& probe) -> std::optional<int> {
    int parity = 0;
    std::uint64_t vbits = v.low_bits();
    for (int i = 0; i < root; ++i) {
      if (!u.get(i)) continue;
      auto row = probe(i);
      if (!row) return std::nullopt;
      parity ^= std::popcount(*row & vbits) & 1;
    }
    return parity;
  };
  return ds;
}

CellProbeDS make_verbatim_parity(int root) {
  int n = root * root;
  CellProbeDS ds;
  ds.name = "verbatim-parity";
  ds.root = root;
  ds.cells = n + 1;
  ds.word_bits = 1;
  ds.time = n;
  ds.build = [root, n](const BitMatrix& m) {
    std::vector<std::uint64_t> cells(n + 1);
    int parity = 0;
    for (int a = 0; a < root; ++a)
      for (int b = 0; b < root; ++b) {
        cells[a * root + b] = m.get(a, b) ? 1 : 0;
        parity ^= m.get(a, b) ? 1 : 0;
      }
    cells[n] = parity;  // all-entries parity = ones^T M ones
    return cells;
  };
  ds.execute = [root, n](const BitVector& u, const BitVector& v,
                         const ProbeFn& probe) -> std::optional<int> {
    if (u.weight() == root && v.weight() == root) {
      auto p = probe(n);
      if (!p) return std::nullopt;
      return static_cast<int>(*p & 1);
    }
    int parity = 0;
    for (int i = 0; i < root; ++i) {
      if (!u.get(i)) continue;
      for (int j = 0; j < root; ++j) {
        if (!v.get(j)) continue;
        auto bit = probe(i * root + j);
        if (!bit) return std::nullopt;
        parity ^= static_cast<int>(*bit & 1);
      }
    }
    return parity;
  };
  return ds;
}

CellProbeDS make_machine(const std::string& name, int root) {
  if (name == "row-store") return make_row_store(root);
  if (name == "verbatim-parity") return make_verbatim_parity(root);
  throw std::invalid_argument("unknown machine: " + name);
}

TraceResult trace_query(const CellProbeDS& ds,
                        const std::vector<std::uint64_t>& contents,
                        const BitVector& u, const BitVector& v) {
  TraceResult res;
  std::set<int> probed;
  auto ans = ds.execute(u, v, [&](int cell) -> std::optional<std::uint64_t> {
    probed.insert(cell);
    return contents.at(cell);
  });
  if (!ans) throw std::logic_error("executor aborted with all cells available");
  res.answer = *ans;
  res.probed.assign(probed.begin(), probed.end());
  if (static_cast<int>(res.probed.size()) > ds.time)
    throw std::logic_error("executor exceeded its declared probe budget");
  return res;
}

Rational per_matrix_advantage(const CellProbeDS& ds, const BitMatrix& m) {
  auto contents = ds.build(m);
  std::uint64_t side = std::uint64_t(1) << ds.root;
  long correct = 0;
  long total = 0;
  for (std::uint64_t uc = 0; uc < side; ++uc) {
    BitVector u = BitVector::from_bits(ds.root, uc);
    for (std::uint64_t vc = 0; vc < side; ++vc) {
      BitVector v = BitVector::from_bits(ds.root, vc);
      if (trace_query(ds, contents, u, v).answer == truth_bit(m, u, v))
        ++correct;
      ++total;
    }
  }
  return rat(2 * correct - total, total);
}

BiasLedger compute_ledger(const CellProbeDS& ds, const Caps& caps) {
  int n = ds.root * ds.root;
  if (n > caps.max_input_log2)
    throw CapExceeded("2^" + std::to_string(n) +
                      " matrix enumeration exceeds input cap");
  BiasLedger ledger;
  ledger.root = ds.root;
  std::uint64_t count = std::uint64_t(1) << n;
  Rational sum = 0;
  for (std::uint64_t code = 0; code < count; ++code) {
    Rational adv = per_matrix_advantage(ds, matrix_from_code(ds.root, code));
    sum += adv;
    ledger.per_matrix.push_back(std::move(adv));
  }
  ledger.global = sum / rat(static_cast<long>(count));
  return ledger;
}

Rational bias(const BitMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  int root = m.rows();
  if (root <= 5) {
    std::uint64_t side = std::uint64_t(1) << root;
    long sum = 0;
    for (std::uint64_t uc = 0; uc < side; ++uc) {
      BitVector u = BitVector::from_bits(root, uc);
      for (std::uint64_t vc = 0; vc < side; ++vc) {
        BitVector v = BitVector::from_bits(root, vc);
        sum += truth_bit(m, u, v) ? -1 : 1;
      }
    }
    return rat(sum, static_cast<long>(side * side));
  }
  return rat_pow(rat(1, 2), rank(m));
}

Rational moment(int root, int k, const Caps& caps) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  int n = root * root;
  if (n > caps.max_input_log2)
    throw CapExceeded("2^" + std::to_string(n) +
                      " matrix enumeration exceeds input cap");
  std::vector<long> rank_count(root + 1, 0);
  std::uint64_t count = std::uint64_t(1) << n;
  for (std::uint64_t code = 0; code < count; ++code)
    ++rank_count[rank(matrix_from_code(root, code))];
  Rational sum = 0;
  for (int r = 0; r <= root; ++r)
    sum += rat(rank_count[r]) * rat_pow(rat(1, 2), r * k);
  return sum / rat(static_cast<long>(count));
}

bool moment_bound_check(int root, int k, const Caps& caps) {
  double bound = 2.0 * std::exp2(-9.0 * k * root / 20.0);
  return rat_double(moment(root, k, caps)) <= bound;
}

unsigned long long count_low_rank(int root, int k, const Caps& caps) {
  int n = root * root;
  if (n > caps.max_input_log2)
    throw CapExceeded("2^" + std::to_string(n) +
                      " matrix enumeration exceeds input cap");
  unsigned long long low = 0;
  std::uint64_t count = std::uint64_t(1) << n;
  for (std::uint64_t code = 0; code < count; ++code)
    if (rank(matrix_from_code(root, code)) <= k) ++low;
  return low;
}

Rational rectangle_discrepancy(int root, int k,
                               const std::vector<BitMatrix>& a_side,
                               const std::vector<PairTuple>& b_side) {
  for (const auto& tuple : b_side)
    if (static_cast<int>(tuple.size()) != k)
      throw std::invalid_argument("every tuple must have k pairs");
  long long sum = 0;
  for (const auto& m : a_side)
    for (const auto& tuple : b_side) {
      int parity = 0;
      for (const auto& [u, v] : tuple) parity ^= truth_bit(m, u, v);
      sum += parity ? -1 : 1;
    }
  Rational total = rat_pow(rat(2), root * root) * rat_pow(rat(2), 2 * root * k);
  return Rational(static_cast<long>(sum)) / total;
}

CellProbeDS majority_flip(const CellProbeDS& inner) {
  CellProbeDS ds;
  ds.name = inner.name + "+flip";
  ds.root = inner.root;
  ds.cells = inner.cells + 1;
  ds.word_bits = inner.word_bits;
  ds.time = inner.time + 1;
  int flip_cell = inner.cells;
  ds.build = [inner, flip_cell](const BitMatrix& m) {
    auto cells = inner.build(m);
    // Flip exactly when the unmodified machine is right on fewer than half
    // of the queries against this matrix.
    std::uint64_t side = std::uint64_t(1) << inner.root;
    long correct = 0;
    long total = 0;
    for (std::uint64_t uc = 0; uc < side; ++uc) {
      BitVector u = BitVector::from_bits(inner.root, uc);
      for (std::uint64_t vc = 0; vc < side; ++vc) {
        BitVector v = BitVector::from_bits(inner.root, vc);
        if (trace_query(inner, cells, u, v).answer == truth_bit(m, u, v))
          ++correct;
        ++total;
      }
    }
    cells.push_back(2 * correct < total ? 1 : 0);
    return cells;
  };
  ds.execute = [inner, flip_cell](const BitVector& u, const BitVector& v,
                                  const ProbeFn& probe) -> std::optional<int> {
    auto base = inner.execute(u, v, probe);
    if (!base) return std::nullopt;
    auto flip = probe(flip_cell);
    if (!flip) return std::nullopt;
    return *base ^ static_cast<int>(*flip & 1);
  };
  return ds;
}

SampleResult cell_sample(const CellProbeDS& ds, const BitMatrix& m, int size,
                         int trials, std::uint64_t seed) {
  if (size < 0 || size > ds.cells)
    throw std::invalid_argument("need 0 <= size <= cells");
  if (trials < 1) throw std::invalid_argument("need trials >= 1");
  auto contents = ds.build(m);

  std::uint64_t side = std::uint64_t(1) << ds.root;
  struct QueryInfo {
    BitVector u, v;
    std::vector<int> probed;
    int z;  // +1 correct, -1 wrong
  };
  std::vector<QueryInfo> queries;
  for (std::uint64_t uc = 0; uc < side; ++uc) {
    BitVector u = BitVector::from_bits(ds.root, uc);
    for (std::uint64_t vc = 0; vc < side; ++vc) {
      BitVector v = BitVector::from_bits(ds.root, vc);
      TraceResult t = trace_query(ds, contents, u, v);
      queries.push_back(
          {u, v, t.probed, t.answer == truth_bit(m, u, v) ? 1 : -1});
    }
  }
  long total = static_cast<long>(queries.size());

  std::mt19937_64 rng(seed);
  std::vector<int> indices(ds.cells);
  SampleResult best;
  bool have_best = false;
  for (int trial = 0; trial < trials; ++trial) {
    for (int i = 0; i < ds.cells; ++i) indices[i] = i;
    for (int i = 0; i < size; ++i) {
      int j = i + static_cast<int>(rng() % (ds.cells - i));
      std::swap(indices[i], indices[j]);
    }
    std::vector<int> sample(indices.begin(), indices.begin() + size);
    std::sort(sample.begin(), sample.end());

    long net = 0;
    for (const auto& q : queries) {
      if (std::includes(sample.begin(), sample.end(), q.probed.begin(),
                        q.probed.end()))
        net += q.z;
    }
    Rational margin = rat(net, total);
    if (!have_best || margin > best.margin) {
      have_best = true;
      best.cells = std::move(sample);
      best.margin = margin;
    }
  }

  best.q1.clear();
  best.q2.clear();
  for (const auto& q : queries) {
    if (!std::includes(best.cells.begin(), best.cells.end(), q.probed.begin(),
                       q.probed.end()))
      continue;
    (q.z > 0 ? best.q1 : best.q2).emplace_back(q.u, q.v);
  }

  // Regime flag for the sampling lemma's margin guarantee.
  double n = ds.root * ds.root;
  double beta =
      2.0 * (ds.word_bits +
             std::log2(static_cast<double>(ds.cells) * ds.word_bits / n));
  best.hypotheses_hold = false;
  if (beta > 0) {
    double lim1 = n / (256.0 * beta);
    double l2 = std::log2(ds.cells * beta / n);
    double lim2 = l2 > 0 ? std::sqrt(n) / (256.0 * l2)
                         : std::numeric_limits<double>::infinity();
    best.hypotheses_hold = ds.time <= std::min(lim1, lim2);
  }
  return best;
}

unsigned long long subset_colex_rank(const std::vector<int>& sorted_cells) {
  unsigned long long r = 0;
  for (std::size_t i = 0; i < sorted_cells.size(); ++i)
    r += static_cast<unsigned long long>(
        binom128(sorted_cells[i], static_cast<int>(i) + 1));
  return r;
}

MessageBits message_bits(int s, int w, int size) {
  if (size < 0 || size > s) throw std::invalid_argument("need 0 <= size <= s");
  MessageBits out;
  out.exact = 1 + static_cast<long long>(size) * w +
              ceil_log2_u128(binom128(s, size));
  out.bound =
      size == 0
          ? 1.0
          : 1.0 + static_cast<double>(size) * w +
                size * std::log2(std::exp(1.0) * s / static_cast<double>(size));
  return out;
}

ProtocolResult run_protocol(const CellProbeDS& ds, const BitMatrix& m,
                            const SampleResult& sample) {
  auto contents = ds.build(m);
  std::set<std::pair<BitVector, BitVector>> covered;
  for (const auto& p : sample.q1) covered.insert(p);
  for (const auto& p : sample.q2) covered.insert(p);

  std::uint64_t side = std::uint64_t(1) << ds.root;
  long total = static_cast<long>(side * side);

  // Majority bit over the uncovered queries, ties toward 0.
  long ones = 0, zeros = 0;
  for (std::uint64_t uc = 0; uc < side; ++uc) {
    BitVector u = BitVector::from_bits(ds.root, uc);
    for (std::uint64_t vc = 0; vc < side; ++vc) {
      BitVector v = BitVector::from_bits(ds.root, vc);
      if (covered.count({u, v})) continue;
      (truth_bit(m, u, v) ? ones : zeros)++;
    }
  }
  int b = ones > zeros ? 1 : 0;

  std::set<int> in_sample(sample.cells.begin(), sample.cells.end());
  auto restricted = [&](int cell) -> std::optional<std::uint64_t> {
    if (!in_sample.count(cell)) return std::nullopt;
    return contents.at(cell);
  };

  long correct = 0;
  for (std::uint64_t uc = 0; uc < side; ++uc) {
    BitVector u = BitVector::from_bits(ds.root, uc);
    for (std::uint64_t vc = 0; vc < side; ++vc) {
      BitVector v = BitVector::from_bits(ds.root, vc);
      auto simulated = ds.execute(u, v, restricted);
      int bob = simulated ? *simulated : b;
      if (bob == truth_bit(m, u, v)) ++correct;
    }
  }

  ProtocolResult res;
  res.msg.b = b;
  res.msg.cell_indices = sample.cells;
  for (int cell : sample.cells) res.msg.contents.push_back(contents.at(cell));
  res.msg.location_rank = subset_colex_rank(sample.cells);
  res.msg.total_bits =
      message_bits(ds.cells, ds.word_bits,
                   static_cast<int>(sample.cells.size()))
          .exact;
  res.success = rat(correct, total);
  res.accounting_identity =
      rat(static_cast<long>(sample.q1.size()), total) +
      rat(std::max(ones, zeros), total);
  return res;
}

DirectSumResult direct_sum_success(const BiasLedger& ledger, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  for (const auto& adv : ledger.per_matrix)
    if (adv < 0)
      throw std::invalid_argument(
          "negative per-matrix advantage; apply the sign-bit normalization "
          "(majority_flip) first");
  Rational sum = 0;
  for (const auto& adv : ledger.per_matrix) sum += rat_pow(adv, k);
  Rational mean = sum / rat(static_cast<long>(ledger.per_matrix.size()));
  DirectSumResult res;
  res.success = (Rational(1) + mean) / 2;
  res.convexity_floor = (Rational(1) + rat_pow(ledger.global, k)) / 2;
  return res;
}

}  // namespace rigidlab
