#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "rigidlab/commsim.hpp"
#include "rigidlab/gf2.hpp"

using namespace rigidlab;

namespace {

// Deliberately bad machine: same cells as the row store, answer inverted.
// Every per-matrix advantage is -1, which exercises the flip wrapper.
CellProbeDS make_contrarian(int root) {
  CellProbeDS ds = make_row_store(root);
  ds.name = "contrarian";
  auto inner = ds.execute;
  ds.execute = [inner](const BitVector& u, const BitVector& v,
                       const ProbeFn& probe) -> std::optional<int> {
    auto base = inner(u, v, probe);
    if (!base) return std::nullopt;
    return 1 - *base;
  };
  return ds;
}

}  // namespace

TEST_CASE("matrix codes round trip") {
  for (std::uint64_t code = 0; code < 512; ++code)
    CHECK(matrix_code(matrix_from_code(3, code)) == code);
}

TEST_CASE("builtin machines answer every query correctly") {
  for (int root : {2, 3}) {
    for (const char* name : {"row-store", "verbatim-parity"}) {
      CellProbeDS ds = make_machine(name, root);
      std::uint64_t mats = std::uint64_t(1) << (root * root);
      for (std::uint64_t code = 0; code < mats; ++code) {
        BitMatrix m = matrix_from_code(root, code);
        CHECK(per_matrix_advantage(ds, m) == Rational(1));
      }
    }
  }
  CHECK_THROWS(make_machine("no-such-machine", 2));
}

TEST_CASE("trace contents and probe budget") {
  CellProbeDS ds = make_row_store(3);
  BitMatrix m = BitMatrix::from_strings({"110", "011", "101"});
  auto contents = ds.build(m);
  TraceResult t = trace_query(ds, contents, BitVector::from_string("101"),
                              BitVector::from_string("110"));
  CHECK(t.probed == std::vector<int>{0, 2});  // rows with u_i = 1
  CHECK(t.answer == 1);  // row0*v + row2*v = 0 + 1

  // The all-ones query on the verbatim machine takes the parity shortcut.
  CellProbeDS vp = make_verbatim_parity(3);
  auto vc = vp.build(m);
  TraceResult tv = trace_query(vp, vc, BitVector::ones(3), BitVector::ones(3));
  CHECK(tv.probed == std::vector<int>{9});
  CHECK(tv.answer == 0);  // 6 ones in m

  // A budget violation is a contract violation, not a wrong answer.
  CellProbeDS lying = ds;
  lying.time = 1;
  CHECK_THROWS_AS(trace_query(lying, contents, BitVector::from_string("111"),
                              BitVector::from_string("110")),
                  std::logic_error);
}

TEST_CASE("bias equals two to the minus rank") {
  for (int root : {2, 3}) {
    std::uint64_t mats = std::uint64_t(1) << (root * root);
    for (std::uint64_t code = 0; code < mats; ++code) {
      BitMatrix m = matrix_from_code(root, code);
      // Enumerated path (root <= 5) against the closed form.
      CHECK(bias(m) == rat_pow(rat(1, 2), rank(m)));
    }
  }
}

TEST_CASE("moments and rank counts") {
  CHECK(moment(2, 1) == rat(7, 16));
  CHECK(moment(2, 2) == rat(29, 128));
  CHECK(moment(3, 1) == rat(120, 512));
  CHECK(count_low_rank(2, 0) == 1);
  CHECK(count_low_rank(2, 1) == 10);
  CHECK(count_low_rank(2, 2) == 16);
  CHECK(count_low_rank(3, 1) == 50);
  CHECK(count_low_rank(3, 2) == 344);
  for (int root : {2, 3})
    for (int k = 0; k <= root; ++k)
      CHECK(count_low_rank(root, k) <= (1ull << (2 * k * root)));
  CHECK(moment_bound_check(2, 1));
  CHECK(moment_bound_check(3, 2));
}

TEST_CASE("rectangle discrepancy against full rectangles") {
  // With indicator 1 on all matrices and all 1-tuples the discrepancy is
  // exactly the first moment.
  std::vector<BitMatrix> all_m;
  for (std::uint64_t code = 0; code < 16; ++code)
    all_m.push_back(matrix_from_code(2, code));
  std::vector<PairTuple> all_t;
  for (std::uint64_t uc = 0; uc < 4; ++uc)
    for (std::uint64_t vc = 0; vc < 4; ++vc)
      all_t.push_back(
          {{BitVector::from_bits(2, uc), BitVector::from_bits(2, vc)}});
  CHECK(rectangle_discrepancy(2, 1, all_m, all_t) == moment(2, 1));
  CHECK_THROWS(rectangle_discrepancy(2, 2, all_m, all_t));
}

TEST_CASE("majority flip repairs a hostile machine") {
  CellProbeDS bad = make_contrarian(2);
  BiasLedger bad_ledger = compute_ledger(bad);
  for (const auto& adv : bad_ledger.per_matrix) CHECK(adv == Rational(-1));
  CHECK_THROWS_AS(direct_sum_success(bad_ledger, 2), std::invalid_argument);

  CellProbeDS fixed = majority_flip(bad);
  CHECK(fixed.cells == bad.cells + 1);
  CHECK(fixed.time == bad.time + 1);
  BiasLedger ledger = compute_ledger(fixed);
  for (const auto& adv : ledger.per_matrix) CHECK(adv >= 0);
  // The contrarian is wrong everywhere, so one flip makes it perfect.
  CHECK(ledger.global == Rational(1));

  // Flipping an already-correct machine changes nothing.
  BiasLedger good = compute_ledger(majority_flip(make_row_store(2)));
  CHECK(good.global == Rational(1));
}

TEST_CASE("direct sum success and its convexity floor") {
  // Hand-built ledger with mixed advantages 1 and 0.
  BiasLedger ledger;
  ledger.root = 2;
  ledger.per_matrix = {Rational(1), Rational(0)};
  ledger.global = rat(1, 2);
  DirectSumResult res = direct_sum_success(ledger, 3);
  CHECK(res.success == rat(3, 4));         // (1 + (1+0)/2) / 2
  CHECK(res.convexity_floor == rat(9, 16));  // (1 + (1/2)^3) / 2
  CHECK(res.success >= res.convexity_floor);
}

TEST_CASE("cell sampling is seeded and consistent") {
  CellProbeDS ds = make_row_store(3);
  BitMatrix m = matrix_from_code(3, 0b110101011);
  SampleResult a = cell_sample(ds, m, 2, 8, 42);
  SampleResult b = cell_sample(ds, m, 2, 8, 42);
  CHECK(a.cells == b.cells);
  CHECK(a.margin == b.margin);
  CHECK(int(a.cells.size()) == 2);
  CHECK(std::is_sorted(a.cells.begin(), a.cells.end()));

  // Margin accounting: covered correct minus covered wrong over all queries.
  long total = 64;
  CHECK(a.margin == rat(long(a.q1.size()) - long(a.q2.size()), total));
  // Row-store answers are always right, so no covered query is wrong.
  CHECK(a.q2.empty());

  // Every covered query's trace really stays inside the sample.
  auto contents = ds.build(m);
  for (const auto& [u, v] : a.q1) {
    TraceResult t = trace_query(ds, contents, u, v);
    CHECK(std::includes(a.cells.begin(), a.cells.end(), t.probed.begin(),
                        t.probed.end()));
  }
  CHECK_THROWS(cell_sample(ds, m, 99, 1, 0));
}

TEST_CASE("subset colex rank") {
  // All 2-subsets of {0..3} in colex order get ranks 0..5.
  std::vector<std::vector<int>> colex = {{0, 1}, {0, 2}, {1, 2},
                                         {0, 3}, {1, 3}, {2, 3}};
  for (std::size_t i = 0; i < colex.size(); ++i)
    CHECK(subset_colex_rank(colex[i]) == i);
  CHECK(subset_colex_rank({}) == 0);
}

TEST_CASE("message bits exact versus bound") {
  MessageBits mb = message_bits(10, 3, 4);
  CHECK(mb.exact == 1 + 12 + 8);  // C(10,4) = 210, ceil log2 = 8
  CHECK(double(mb.exact) <= mb.bound);
  MessageBits mb2 = message_bits(8, 3, 2);
  CHECK(mb2.exact == 1 + 6 + 5);  // C(8,2) = 28, ceil log2 = 5
  CHECK(message_bits(10, 3, 0).exact == 1);
  CHECK(message_bits(10, 3, 10).exact == 1 + 30);  // C(10,10) = 1
  CHECK_THROWS(message_bits(4, 1, 5));

  // Exact never exceeds the entropy-style bound across the whole desk range.
  for (int s = 1; s <= 64; ++s)
    for (int size = 1; size <= s; ++size)
      for (int w : {1, 2, 7, 32, 64}) {
        MessageBits b = message_bits(s, w, size);
        CHECK(double(b.exact) <= b.bound);
      }
}

TEST_CASE("protocol success matches the closed-form accounting") {
  for (const char* name : {"row-store", "verbatim-parity"}) {
    CellProbeDS ds = make_machine(name, 2);
    for (std::uint64_t code : {0ull, 5ull, 9ull, 15ull}) {
      BitMatrix m = matrix_from_code(2, code);
      for (int size = 0; size <= ds.cells; ++size) {
        SampleResult s = cell_sample(ds, m, size, 4, 7);
        ProtocolResult p = run_protocol(ds, m, s);
        CHECK(p.success == p.accounting_identity);
        CHECK(p.msg.total_bits ==
              message_bits(ds.cells, ds.word_bits, size).exact);
        CHECK(int(p.msg.contents.size()) == size);
        // Full sample lets Bob simulate everything.
        if (size == ds.cells) CHECK(p.success == Rational(1));
      }
    }
  }
}
