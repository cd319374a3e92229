// Command-line front end: named experiments with reproducible seeds and
// structured csv/json reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rigidlab/commsim.hpp"
#include "rigidlab/gf2.hpp"
#include "rigidlab/queryset.hpp"
#include "rigidlab/rigidity.hpp"
#include "rigidlab/sysds.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace rigidlab;

struct Report {
  json body;
  std::string format = "json";
  std::string out;

  void stamp(const std::string& command, const std::string& flags,
             std::uint64_t seed, long long elapsed_ms) {
    body["command"] = command;
    body["flags"] = flags;
    body["seed"] = seed;
    body["version"] = kVersion;
    body["elapsed_ms"] = elapsed_ms;
  }

  void emit() const {
    std::ostringstream text;
    if (format == "json") {
      text << body.dump(2) << "\n";
    } else {
      // Flat csv: header row of keys, one row of scalar values; array
      // fields are joined with ';'.
      std::string header, row;
      for (auto it = body.begin(); it != body.end(); ++it) {
        if (!header.empty()) {
          header += ",";
          row += ",";
        }
        header += it.key();
        if (it->is_array()) {
          std::string joined;
          for (const auto& e : *it) {
            if (!joined.empty()) joined += ";";
            joined += e.is_string() ? e.get<std::string>() : e.dump();
          }
          row += "\"" + joined + "\"";
        } else if (it->is_string()) {
          row += it->get<std::string>();
        } else {
          row += it->dump();
        }
      }
      text << header << "\n" << row << "\n";
    }
    if (out.empty()) {
      std::cout << text.str();
    } else {
      std::ofstream f(out);
      if (!f) throw std::runtime_error("cannot write " + out);
      f << text.str();
    }
  }
};

json basis_rows(const Subspace& s) {
  json rows = json::array();
  for (int i = 0; i < s.dim(); ++i) rows.push_back(s.basis().row(i).str());
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigidity / systematic-linear-model laboratory"};
  app.require_subcommand(1);

  std::string flags_text;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) flags_text += " ";
    flags_text += argv[i];
  }

  Caps caps;
  std::uint64_t seed = 0;
  std::string out, format = "json";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--out", out, "output file (default stdout)");
    cmd->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--cap-subspaces", caps.max_subspaces,
                    "subspace enumeration cap");
    cmd->add_option("--cap-input-space", caps.max_input_log2,
                    "log2 cap on 2^n scans");
  };

  // gen-queryset
  std::string gen_uri, gen_out;
  auto* cmd_gen = app.add_subcommand("gen-queryset", "materialize a query set");
  cmd_gen->add_option("uri", gen_uri, "builtin:... uri or file")->required();
  cmd_gen->add_option("--out", gen_out, "output file")->required();
  cmd_gen->add_option("--cap-input-space", caps.max_input_log2);

  // rigidity / strong-rigidity
  std::string queries_uri;
  int r_dim = 0;
  auto* cmd_rig = app.add_subcommand("rigidity", "exact RIG(Q, r)");
  cmd_rig->add_option("--queries", queries_uri)->required();
  cmd_rig->add_option("--r", r_dim)->required();
  add_common(cmd_rig);

  auto* cmd_strong =
      app.add_subcommand("strong-rigidity", "min average distance over dim-r");
  cmd_strong->add_option("--queries", queries_uri)->required();
  cmd_strong->add_option("--r", r_dim)->required();
  add_common(cmd_strong);

  // fold
  std::string fold_out;
  auto* cmd_fold = app.add_subcommand("fold", "block-project a set to F_2^{2r}");
  cmd_fold->add_option("--queries", queries_uri)->required();
  cmd_fold->add_option("--r", r_dim)->required();
  cmd_fold->add_option("--out", fold_out, "folded set file")->required();

  // far-rank-one
  int fro_n = 0, fro_dim = 0;
  std::string fro_subspace;
  auto* cmd_fro =
      app.add_subcommand("far-rank-one", "rank-one point far from a subspace");
  cmd_fro->add_option("--n", fro_n, "ambient dimension (perfect square)")
      ->required();
  cmd_fro->add_option("--dim", fro_dim, "random subspace dimension");
  cmd_fro->add_option("--subspace", fro_subspace, "basis file");
  add_common(cmd_fro);

  // equivalence-check
  std::vector<std::string> eq_uris;
  int eq_n = 0;
  auto* cmd_eq = app.add_subcommand("equivalence-check",
                                    "t_direct vs rigidity value, both exact");
  cmd_eq->add_option("--queries", eq_uris, "one or more query set uris")
      ->required();
  cmd_eq->add_option("--r", r_dim)->required();
  cmd_eq->add_option("--n", eq_n, "expected ambient dimension (validated)");
  add_common(cmd_eq);

  // protocol-sim
  int root = 2, sample_size = 0, trials = 10;
  std::string machine = "row-store";
  std::uint64_t matrix_code_flag = 0;
  bool matrix_given = false;
  auto* cmd_prot = app.add_subcommand("protocol-sim",
                                      "one-way protocol from cell sampling");
  cmd_prot->add_option("--root", root)->required();
  cmd_prot->add_option("--machine", machine)
      ->check(CLI::IsMember({"row-store", "verbatim-parity"}));
  cmd_prot->add_option("--sample-size", sample_size)->required();
  cmd_prot->add_option("--trials", trials);
  auto* mopt = cmd_prot->add_option("--matrix-code", matrix_code_flag,
                                    "vec(M) as integer; default identity");
  add_common(cmd_prot);

  // discrepancy
  int disc_k = 1;
  auto* cmd_disc =
      app.add_subcommand("discrepancy", "moment vs discrepancy bound");
  cmd_disc->add_option("--root", root)->required();
  cmd_disc->add_option("--k", disc_k)->required();
  add_common(cmd_disc);

  // identity-checks
  auto* cmd_id = app.add_subcommand(
      "identity-checks", "four-query and bias identities, exhaustive");
  cmd_id->add_option("--root", root)->required();
  add_common(cmd_id);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - started)
        .count();
  };

  Report report;
  report.format = format;
  report.out = out;

  try {
    if (cmd_gen->parsed()) {
      QuerySet q = resolve_queryset(gen_uri, caps);
      save_queryset(q, gen_out);
      std::cout << "wrote " << q.size() << " vectors of length " << q.n
                << " to " << gen_out << "\n";
      return 0;
    }

    if (cmd_rig->parsed()) {
      QuerySet q = resolve_queryset(queries_uri, caps);
      RigidityReport rep = rigidity_value(q, r_dim, caps);
      report.body["n"] = rep.n;
      report.body["r"] = rep.r;
      report.body["m"] = q.size();
      report.body["value"] = rep.value;
      report.body["witness_basis"] = basis_rows(rep.witness);
      report.body["argmax_query"] = rep.argmax_query.str();
      report.body["subspace_count_scanned"] = rep.subspaces_scanned;
      report.stamp("rigidity", flags_text, seed, elapsed_ms());
      report.emit();
      return 0;
    }

    if (cmd_strong->parsed()) {
      QuerySet q = resolve_queryset(queries_uri, caps);
      StrongRigidityReport rep = strong_rigidity_value(q, r_dim, caps);
      report.body["n"] = q.n;
      report.body["r"] = r_dim;
      report.body["m"] = q.size();
      report.body["value"] = rat_str(rep.value);
      report.body["witness_basis"] = basis_rows(rep.witness);
      report.body["subspace_count_scanned"] = rep.subspaces_scanned;
      report.stamp("strong-rigidity", flags_text, seed, elapsed_ms());
      report.emit();
      return 0;
    }

    if (cmd_fold->parsed()) {
      QuerySet q = resolve_queryset(queries_uri, caps);
      QuerySet folded = fold_set(q, r_dim);
      save_queryset(folded, fold_out);
      std::cout << "wrote " << folded.size() << " vectors of length "
                << folded.n << " to " << fold_out << "\n";
      return 0;
    }

    if (cmd_fro->parsed()) {
      Subspace v_space;
      if (!fro_subspace.empty()) {
        QuerySet basis = load_queryset(fro_subspace);
        v_space = Subspace::from_span(fro_n, basis.vectors);
      } else {
        QuerySet basis = gen_random(fro_n, std::max(fro_dim, 1), seed);
        if (fro_dim == 0)
          v_space = Subspace::zero(fro_n);
        else
          v_space = Subspace::from_span(fro_n, basis.vectors);
      }
      FarRankOneResult res = find_far_rank_one(v_space, fro_n, caps);
      int recheck = distance_to_subspace(vec(outer(res.a, res.b)), v_space,
                                         caps.max_coset_dim);
      report.body["n"] = fro_n;
      report.body["dim"] = v_space.dim();
      report.body["r_prime"] = res.r_prime;
      report.body["copies"] = res.copies;
      report.body["a"] = res.a.str();
      report.body["b"] = res.b.str();
      report.body["certified"] = res.certified;
      report.body["block_distance_sum"] = res.block_distance_sum;
      report.body["recheck"] = recheck;
      report.stamp("far-rank-one", flags_text, seed, elapsed_ms());
      report.emit();
      return 0;
    }

    if (cmd_eq->parsed()) {
      std::ostringstream csv;
      csv << "set_id,n,r,rig_value,t_direct,equal\n";
      json rows = json::array();
      for (const auto& uri : eq_uris) {
        QuerySet q = resolve_queryset(uri, caps);
        if (eq_n != 0 && q.n != eq_n)
          throw ParseError(uri + " lives in F_2^" + std::to_string(q.n) +
                           ", expected n=" + std::to_string(eq_n));
        int rig = rigidity_value(q, r_dim, caps).value;
        int td = t_direct(q, r_dim, caps);
        csv << (q.name.empty() ? uri : q.name) << "," << q.n << "," << r_dim
            << "," << rig << "," << td << ","
            << (rig == td ? "true" : "false") << "\n";
        rows.push_back({{"set_id", q.name.empty() ? uri : q.name},
                        {"n", q.n},
                        {"r", r_dim},
                        {"rig_value", rig},
                        {"t_direct", td},
                        {"equal", rig == td}});
      }
      if (format == "csv") {
        if (out.empty()) {
          std::cout << csv.str();
        } else {
          std::ofstream f(out);
          f << csv.str();
        }
      } else {
        report.body["rows"] = rows;
        report.stamp("equivalence-check", flags_text, seed, elapsed_ms());
        report.emit();
      }
      return 0;
    }

    if (cmd_prot->parsed()) {
      matrix_given = mopt->count() > 0;
      CellProbeDS ds = make_machine(machine, root);
      BitMatrix m = matrix_given ? matrix_from_code(root, matrix_code_flag)
                                 : BitMatrix::identity(root);
      BiasLedger ledger = compute_ledger(ds, caps);
      SampleResult sample = cell_sample(ds, m, sample_size, trials, seed);
      ProtocolResult prot = run_protocol(ds, m, sample);
      MessageBits bits = message_bits(ds.cells, ds.word_bits, sample_size);

      json per_m = json::array();
      for (const auto& adv : ledger.per_matrix) per_m.push_back(rat_str(adv));
      report.body["machine"] = ds.name;
      report.body["root"] = root;
      report.body["matrix_code"] = matrix_code(m);
      report.body["per_M"] = per_m;
      report.body["global_advantage"] = rat_str(ledger.global);
      report.body["sample"] = {
          {"S", sample.cells},
          {"margin", rat_str(sample.margin)},
          {"hypotheses_hold", sample.hypotheses_hold}};
      report.body["message_bits"] = {{"exact", bits.exact},
                                     {"bound", bits.bound}};
      report.body["majority_bit"] = prot.msg.b;
      report.body["success"] = rat_str(prot.success);
      report.body["trials"] = trials;
      report.stamp("protocol-sim", flags_text, seed, elapsed_ms());
      report.emit();
      return 0;
    }

    if (cmd_disc->parsed()) {
      Rational mom = moment(root, disc_k, caps);
      double bound = 2.0 * std::exp2(-9.0 * disc_k * root / 20.0);
      bool pass = moment_bound_check(root, disc_k, caps);
      report.body["root"] = root;
      report.body["k"] = disc_k;
      report.body["moment"] = rat_str(mom);
      report.body["bound_formula"] = "2*2^(-9*k*root/20)";
      report.body["bound"] = bound;
      report.body["pass"] = pass;
      report.stamp("discrepancy", flags_text, seed, elapsed_ms());
      report.emit();
      return !pass ? 4 : 0;
    }

    if (cmd_id->parsed()) {
      // Four-query identity over all (M, u, v, i, j); bias identity over
      // all M. Exhaustive, so keep root small.
      if (2 * root * root > caps.max_input_log2 + root * root)
        throw CapExceeded("root too large for exhaustive identity checks");
      std::uint64_t mats = std::uint64_t(1) << (root * root);
      std::uint64_t side = std::uint64_t(1) << root;
      bool four_ok = true;
      bool bias_ok = true;
      unsigned long long checked = 0;
      for (std::uint64_t code = 0; code < mats; ++code) {
        BitMatrix m = matrix_from_code(root, code);
        if (bias(m) != rat_pow(rat(1, 2), rank(m))) bias_ok = false;
        for (std::uint64_t uc = 0; uc < side && four_ok; ++uc)
          for (std::uint64_t vc = 0; vc < side && four_ok; ++vc)
            for (int i = 0; i < root; ++i)
              for (int j = 0; j < root; ++j) {
                ++checked;
                if (!four_query_identity(m, BitVector::from_bits(root, uc),
                                         BitVector::from_bits(root, vc), i, j))
                  four_ok = false;
              }
      }
      report.body["root"] = root;
      report.body["four_query_identity_all"] = four_ok;
      report.body["bias_identity_all"] = bias_ok;
      report.body["checked"] = checked;
      report.stamp("identity-checks", flags_text, seed, elapsed_ms());
      report.emit();
      return (four_ok && bias_ok) ? 0 : 4;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
