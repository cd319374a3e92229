// Acceptance gate: one pass/fail line per criterion, nonzero exit if any
// fails. Each check is exact; there is no tolerance knob anywhere.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "rigidlab/commsim.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/sysds.hpp"

using namespace rigidlab;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << what;
  if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++failures;
}

BitVector random_vec(int n, std::mt19937_64& rng) {
  BitVector v(n);
  for (int i = 0; i < n; ++i) v.set(i, rng() & 1);
  return v;
}

Subspace random_subspace(int n, int gens, std::mt19937_64& rng) {
  std::vector<BitVector> rows;
  for (int i = 0; i < gens; ++i) rows.push_back(random_vec(n, rng));
  return Subspace::from_span(n, rows);
}

// Shared corpus for criteria 1, 2 and 5: every size<=4 set at n=3, 50 seeded
// random sets per (n, r) for n in 3..6, plus prefix:n and the rank-one set.
std::vector<QuerySet> build_corpus() {
  std::vector<QuerySet> corpus;
  std::vector<BitVector> cube;
  for (std::uint64_t x = 0; x < 8; ++x)
    cube.push_back(BitVector::from_bits(3, x));
  for (int a = 0; a < 8; ++a)
    for (int b = a; b < 8; ++b)
      for (int c = b; c < 8; ++c)
        for (int d = c; d < 8; ++d) {
          QuerySet q;
          q.n = 3;
          q.vectors.push_back(cube[a]);
          if (b > a) q.vectors.push_back(cube[b]);
          if (c > b) q.vectors.push_back(cube[c]);
          if (d > c) q.vectors.push_back(cube[d]);
          q.name = "n3-subset";
          corpus.push_back(std::move(q));
        }
  for (int n = 3; n <= 6; ++n) {
    for (int i = 0; i < 50; ++i) {
      int m = 1 + i % 7;
      corpus.push_back(gen_random(n, m, 1000 * n + i));
    }
    corpus.push_back(gen_prefix(n));
  }
  corpus.push_back(gen_upsilon(2));
  return corpus;
}

void criteria_1_2_5(const std::vector<QuerySet>& corpus) {
  long eq_checked = 0, plan_checked = 0, fold_checked = 0;
  long fold_violations = 0;
  std::string c1_fail, c2_fail, c5_fail;
  for (const auto& q : corpus) {
    for (int r = 0; r <= 3 && r <= q.n; ++r) {
      RigidityReport rep = rigidity_value(q, r);
      ++eq_checked;
      if (t_direct(q, r) != rep.value && c1_fail.empty())
        c1_fail = q.name + " n=" + std::to_string(q.n) +
                  " r=" + std::to_string(r);

      SystematicLinearDS ds = build_plan(q, rep.witness);
      ++plan_checked;
      if ((!verify_exhaustive(ds, q).ok || ds.time() != rep.value) &&
          c2_fail.empty())
        c2_fail = q.name + " r=" + std::to_string(r);

      if (r >= 1 && 2 * r <= q.n) {
        ++fold_checked;
        int folded = rigidity_value(fold_set(q, r), r).value;
        int needed = (rep.value * r + q.n - 1) / q.n;
        if (folded < needed) {
          ++fold_violations;
          if (c5_fail.empty())
            c5_fail = "first: " + q.name + " n=" + std::to_string(q.n) +
                      " r=" + std::to_string(r) +
                      " rig=" + std::to_string(rep.value) +
                      " folded=" + std::to_string(folded);
        }
      }
    }
  }
  report(1,
         "systematic-model time equals rigidity value on " +
             std::to_string(eq_checked) + " (set, r) cases",
         c1_fail.empty(), c1_fail);
  report(2,
         "witness-based plans verify exhaustively and attain the value (" +
             std::to_string(plan_checked) + " cases)",
         c2_fail.empty(), c2_fail);
  // This criterion is expected red: the folding bound is refuted by exact
  // counterexamples inside its own corpus (see the decisions ledger and the
  // frozen case in the unit suite). It is reported as measured, not patched.
  report(5,
         "folded sets keep ceil(t*r/n) rigidity (" +
             std::to_string(fold_checked) + " cases)",
         fold_violations == 0,
         std::to_string(fold_violations) + " violations; " + c5_fail);
}

void criterion_3() {
  std::mt19937_64 rng(777);
  int produced = 0;
  std::string fail;
  while (produced < 200) {
    int n = 4 + int(rng() % 7);  // 4..10
    Subspace basis = random_subspace(n, 1 + int(rng() % 3), rng);
    BitVector q_star = random_vec(n, rng);
    int d = distance_to_subspace(q_star, basis);
    if (d == 0) continue;
    std::vector<int> probes;
    for (int i = 0; i < n && int(probes.size()) < d - 1; ++i)
      if (rng() & 1) probes.push_back(i);
    auto w = extract_adversary(n, basis, q_star, probes);
    if (!w) {
      fail = "no witness with |probes| < distance";
      break;
    }
    ++produced;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n) && fail.empty();
         ++x) {
      BitVector v = BitVector::from_bits(n, x);
      BitVector v2 = v ^ w->y;
      for (int i = 0; i < basis.dim(); ++i)
        if (basis.basis().row(i).dot(v) != basis.basis().row(i).dot(v2))
          fail = "redundancy bit differs";
      for (int p : probes)
        if (v.get(p) != v2.get(p)) fail = "probed coordinate differs";
      if (q_star.dot(v) == q_star.dot(v2)) fail = "true answers agree";
    }
    if (!fail.empty()) break;
  }
  report(3, "adversary witnesses fool 200 under-probed instances exhaustively",
         fail.empty(), fail);
}

void criterion_4() {
  std::string fail;
  std::mt19937_64 rng(555);
  for (int n = 3; n <= 5 && fail.empty(); ++n) {
    for (int s = 0; s < 100 && fail.empty(); ++s) {
      Subspace v = random_subspace(n, int(rng() % (n + 1)), rng);
      std::vector<int> dist(std::size_t(1) << n);
      for (std::uint64_t x = 0; x < dist.size(); ++x)
        dist[x] = distance_to_subspace(BitVector::from_bits(n, x), v);
      for (std::uint64_t a = 0; a < dist.size() && fail.empty(); ++a)
        for (std::uint64_t b = 0; b < dist.size(); ++b)
          if (dist[a ^ b] > dist[a] + dist[b]) {
            fail = "n=" + std::to_string(n);
            break;
          }
    }
  }
  for (int it = 0; it < 10000 && fail.empty(); ++it) {
    Subspace v = random_subspace(12, 2 + int(rng() % 7), rng);
    BitVector u1 = random_vec(12, rng), u2 = random_vec(12, rng);
    if (distance_to_subspace(u1 ^ u2, v) >
        distance_to_subspace(u1, v) + distance_to_subspace(u2, v))
      fail = "random triple at n=12";
  }
  report(4, "coset distance is subadditive (exhaustive n<=5, 10^4 at n=12)",
         fail.empty(), fail);
}

void criterion_6() {
  std::mt19937_64 rng(333);
  std::string fail;
  int dims[] = {1, 2, 4, 8};
  for (int i = 0; i < 50 && fail.empty(); ++i) {
    int want = dims[i % 4];
    Subspace v = random_subspace(16, want, rng);
    FarRankOneResult res = find_far_rank_one(v, 16);
    BitVector point = vec(outer(res.a, res.b));
    int recheck = distance_to_subspace(point, v);
    int needed =
        (res.block_distance_sum * 4 + 2 * res.r_prime - 1) / (2 * res.r_prime);
    if (recheck != res.certified)
      fail = "certificate mismatch at instance " + std::to_string(i);
    else if (res.certified < needed)
      fail = "certificate below the block bound at instance " +
             std::to_string(i);
  }
  report(6, "rank-one construction certificates verify on 50 subspaces of F_2^16",
         fail.empty(), fail);
}

void criterion_7() {
  std::string fail;
  for (std::uint64_t code = 0; code < 512 && fail.empty(); ++code) {
    BitMatrix m = matrix_from_code(3, code);
    if (bias(m) != rat_pow(rat(1, 2), rank(m)))
      fail = "root=3 code " + std::to_string(code);
  }
  for (std::uint64_t code = 0; code < 65536 && fail.empty(); ++code) {
    BitMatrix m = matrix_from_code(4, code);
    if (bias(m) != rat_pow(rat(1, 2), rank(m)))
      fail = "root=4 code " + std::to_string(code);
  }
  std::mt19937_64 rng(111);
  for (int i = 0; i < 10000 && fail.empty(); ++i) {
    std::uint64_t code = rng() & ((std::uint64_t(1) << 25) - 1);
    BitMatrix m = matrix_from_code(5, code);
    // bias() enumerates at root 5; compare against the rank formula.
    if (bias(m) != rat_pow(rat(1, 2), rank(m)))
      fail = "root=5 code " + std::to_string(code);
  }
  report(7, "bias equals 2^-rank (all matrices root 3 and 4, 10^4 at root 5)",
         fail.empty(), fail);
}

void criterion_8() {
  bool ok = moment(2, 1) == rat(7, 16) && moment(3, 1) == rat(120, 512);
  std::string fail = ok ? "" : "fixed moment values";
  for (int root = 2; root <= 4 && fail.empty(); ++root)
    for (int k = 1; k <= root; ++k) {
      if (!moment_bound_check(root, k))
        fail = "moment bound root=" + std::to_string(root) +
               " k=" + std::to_string(k);
      if (count_low_rank(root, k) > (1ull << (2 * k * root)))
        fail = "low-rank count root=" + std::to_string(root) +
               " k=" + std::to_string(k);
    }
  report(8, "moment values, moment bounds and low-rank counts (root 2..4)",
         fail.empty(), fail);
}

void criterion_9() {
  std::string fail;
  std::mt19937_64 rng(999);
  for (int root = 2; root <= 3 && fail.empty(); ++root) {
    std::vector<std::uint64_t> codes;
    std::uint64_t mats = std::uint64_t(1) << (root * root);
    if (root == 2) {
      for (std::uint64_t c = 0; c < mats; ++c) codes.push_back(c);
    } else {
      for (int i = 0; i < 200; ++i) codes.push_back(rng() % mats);
    }
    for (const char* name : {"row-store", "verbatim-parity"}) {
      CellProbeDS ds = make_machine(name, root);
      for (std::uint64_t code : codes) {
        BitMatrix m = matrix_from_code(root, code);
        for (int size = 0; size <= ds.cells && fail.empty(); ++size) {
          SampleResult s = cell_sample(ds, m, size, 3, 17 + code);
          ProtocolResult p = run_protocol(ds, m, s);
          if (p.success != p.accounting_identity)
            fail = std::string(name) + " root=" + std::to_string(root) +
                   " size=" + std::to_string(size) + " accounting mismatch";
          MessageBits mb = message_bits(ds.cells, ds.word_bits, size);
          if (double(mb.exact) > mb.bound)
            fail = std::string(name) + " message bits exceed the bound";
        }
        if (!fail.empty()) break;
      }
      if (fail.empty()) {
        // After the flip wrapper every per-matrix success is >= 1/2.
        BiasLedger ledger = compute_ledger(majority_flip(ds));
        for (const auto& adv : ledger.per_matrix)
          if (adv < 0) fail = std::string(name) + " flip left a bad matrix";
      }
      if (!fail.empty()) break;
    }
  }
  report(9, "protocol accounting identity, message bounds and flip floor",
         fail.empty(), fail);
}

void criterion_10() {
  std::string fail;
  for (int k = 1; k <= 4 && fail.empty(); ++k) {
    QuerySet ups = gen_upsilon(k);
    long long expected = ((1ll << k) - 1) * ((1ll << k) - 1) + 1;
    if (ups.size() != expected)
      fail = "size at k=" + std::to_string(k);
    for (const auto& v : ups.vectors)
      if (rank(mat(v)) > 1) fail = "rank above 1 at k=" + std::to_string(k);
  }
  for (int root = 2; root <= 3 && fail.empty(); ++root) {
    std::uint64_t mats = std::uint64_t(1) << (root * root);
    std::uint64_t side = std::uint64_t(1) << root;
    for (std::uint64_t code = 0; code < mats && fail.empty(); ++code) {
      BitMatrix m = matrix_from_code(root, code);
      for (std::uint64_t uc = 0; uc < side; ++uc)
        for (std::uint64_t vc = 0; vc < side; ++vc)
          for (int i = 0; i < root; ++i)
            for (int j = 0; j < root; ++j)
              if (!four_query_identity(m, BitVector::from_bits(root, uc),
                                       BitVector::from_bits(root, vc), i, j))
                fail = "four-query identity at root " + std::to_string(root);
    }
  }
  report(10, "rank-one set sizes, ranks, and the four-query identity",
         fail.empty(), fail);
}

void criterion_11() {
  std::string fail;
  std::mt19937_64 rng(222);
  for (int n : {4, 6, 8}) {
    for (int it = 0; it < 10 && fail.empty(); ++it) {
      QuerySet q = gen_random(n, 4 + int(rng() % 4), rng());
      Subspace u = random_subspace(n, 1 + int(rng() % 3), rng);
      SystematicLinearDS ds = build_plan(q, u);
      LinearDS lin = to_linear_model(ds);
      int t = ds.time();
      for (const auto& [query, plan] : lin.queries)
        if (int(plan.reads.size()) > t + lin.r)
          fail = "read set larger than t+r at n=" + std::to_string(n);
      for (std::uint64_t x = 0; x < (std::uint64_t(1) << n) && fail.empty();
           ++x) {
        BitVector v = BitVector::from_bits(n, x);
        for (const auto& query : q.vectors)
          if (linear_answer(lin, v, query) != query.dot(v))
            fail = "answer mismatch at n=" + std::to_string(n);
      }
    }
  }
  report(11, "linear-model conversion preserves answers with reads <= t+r",
         fail.empty(), fail);
}

}  // namespace

int main() {
  auto corpus = build_corpus();
  criteria_1_2_5(corpus);
  criterion_3();
  criterion_4();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 11 criteria passed" << std::endl;
  return 0;
}
