#include "rigidlab/sysds.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace rigidlab {

int SystematicLinearDS::time() const {
  int t = 0;
  for (const auto& [q, plan] : plans)
    t = std::max(t, static_cast<int>(plan.probes.size()));
  return t;
}

BitVector SystematicLinearDS::plan_element(const Plan& p) const {
  BitVector u(n);
  for (int i = 0; i < redundancy.dim(); ++i)
    if ((p.coeffs >> i) & 1) u ^= redundancy.basis().row(i);
  return u;
}

SystematicLinearDS build_plan(const QuerySet& q, const Subspace& u,
                              const Caps& caps) {
  if (q.n != u.ambient_dim())
    throw std::invalid_argument("query and subspace dimensions must match");
  SystematicLinearDS ds;
  ds.n = q.n;
  ds.redundancy = u;
  for (const auto& query : q.vectors) {
    auto [nearest, mask] = nearest_in_subspace(query, u, caps.max_coset_dim);
    Plan plan;
    plan.coeffs = mask;
    plan.probes = (query ^ nearest).support();
    ds.plans.emplace(query, std::move(plan));
  }
  return ds;
}

int answer(const SystematicLinearDS& ds, const BitVector& v,
           const BitVector& q) {
  auto it = ds.plans.find(q);
  if (it == ds.plans.end())
    throw std::invalid_argument("query has no plan: " + q.str());
  const Plan& plan = it->second;
  // <u_q, v> assembled from the r precomputed bits <a_i, v>.
  int bit = 0;
  for (int i = 0; i < ds.redundancy.dim(); ++i)
    if ((plan.coeffs >> i) & 1) bit ^= ds.redundancy.basis().row(i).dot(v);
  for (int probe : plan.probes) bit ^= v.get(probe) ? 1 : 0;
  return bit;
}

VerifyResult verify_exhaustive(const SystematicLinearDS& ds, const QuerySet& q,
                               const Caps& caps) {
  if (ds.n > caps.max_input_log2)
    throw CapExceeded("2^" + std::to_string(ds.n) +
                      " input scan exceeds input cap");
  VerifyResult res;
  std::uint64_t space = std::uint64_t(1) << ds.n;
  for (std::uint64_t code = 0; code < space; ++code) {
    BitVector v = BitVector::from_bits(ds.n, code);
    for (const auto& query : q.vectors) {
      if (answer(ds, v, query) != query.dot(v)) {
        res.ok = false;
        res.failing_v = v;
        res.failing_q = query;
        return res;
      }
    }
  }
  return res;
}

int t_direct(const QuerySet& q, int r, const Caps& caps) {
  if (r < 0 || r > q.n) throw std::invalid_argument("need 0 <= r <= n");
  int best = std::numeric_limits<int>::max();
  SubspaceEnumerator en(q.n, r, caps);
  while (auto u = en.next()) {
    auto elems = u->elements(caps.max_coset_dim);
    int worst = 0;
    for (const auto& query : q.vectors) {
      int d = std::numeric_limits<int>::max();
      for (const auto& e : elems) d = std::min(d, (query ^ e).weight());
      worst = std::max(worst, d);
      if (worst >= best) break;
    }
    best = std::min(best, worst);
  }
  return best;
}

std::optional<AdversaryWitness> extract_adversary(
    int n, const Subspace& basis, const BitVector& q_star,
    const std::vector<int>& declared_probes) {
  if (q_star.size() != n || basis.ambient_dim() != n)
    throw std::invalid_argument("dimension mismatch");
  std::vector<BitVector> extra;
  for (int i : declared_probes) extra.push_back(BitVector::unit(n, i));
  Subspace u_prime = basis.extended(extra);
  if (u_prime.contains(q_star)) return std::nullopt;

  // y orthogonal to U' with <y, q_star> = 1.
  BitMatrix constraints(0, n);
  for (int i = 0; i < u_prime.dim(); ++i)
    constraints.append_row(u_prime.basis().row(i));
  constraints.append_row(q_star);
  BitVector rhs(constraints.rows());
  rhs.set(constraints.rows() - 1, true);
  auto y = solve_linear(constraints, rhs);
  if (!y)
    throw std::logic_error("orthogonal fooling vector must exist");

  AdversaryWitness w;
  w.q_star = q_star;
  w.y = *y;
  w.declared_probes = declared_probes;
  return w;
}

int LinearDS::max_read() const {
  int m = 0;
  for (const auto& [q, plan] : queries)
    m = std::max(m, static_cast<int>(plan.reads.size()));
  return m;
}

LinearDS to_linear_model(const SystematicLinearDS& ds) {
  LinearDS out;
  out.n = ds.n;
  out.r = ds.redundancy_dim();
  for (int i = 0; i < out.r; ++i)
    out.stored.push_back(ds.redundancy.basis().row(i));
  for (int i = 0; i < ds.n; ++i)
    out.stored.push_back(BitVector::unit(ds.n, i));

  for (const auto& [q, plan] : ds.plans) {
    LinearQueryPlan lp;
    for (int i = 0; i < out.r; ++i) {
      lp.reads.push_back(i);
      if ((plan.coeffs >> i) & 1) lp.out_coeffs.push_back(i);
    }
    for (int probe : plan.probes) {
      lp.reads.push_back(out.r + probe);
      lp.out_coeffs.push_back(out.r + probe);
    }
    out.queries.emplace(q, std::move(lp));
  }
  return out;
}

int linear_answer(const LinearDS& ds, const BitVector& v, const BitVector& q) {
  auto it = ds.queries.find(q);
  if (it == ds.queries.end())
    throw std::invalid_argument("query has no plan: " + q.str());
  int bit = 0;
  for (int cell : it->second.out_coeffs) bit ^= ds.stored[cell].dot(v);
  return bit;
}

std::string ds_to_json(const SystematicLinearDS& ds) {
  nlohmann::json j;
  j["n"] = ds.n;
  j["basis"] = nlohmann::json::array();
  for (int i = 0; i < ds.redundancy.dim(); ++i)
    j["basis"].push_back(ds.redundancy.basis().row(i).str());
  j["plans"] = nlohmann::json::array();
  for (const auto& [q, plan] : ds.plans) {
    nlohmann::json p;
    p["query"] = q.str();
    std::string coeffs(ds.redundancy.dim(), '0');
    for (int i = 0; i < ds.redundancy.dim(); ++i)
      if ((plan.coeffs >> i) & 1) coeffs[i] = '1';
    p["coeffs"] = coeffs;
    p["probes"] = nlohmann::json::array();
    for (int probe : plan.probes) p["probes"].push_back(probe + 1);  // 1-based
    j["plans"].push_back(std::move(p));
  }
  return j.dump(2);
}

SystematicLinearDS ds_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SystematicLinearDS ds;
  ds.n = j.at("n").get<int>();
  std::vector<BitVector> rows;
  for (const auto& s : j.at("basis"))
    rows.push_back(BitVector::from_string(s.get<std::string>()));
  ds.redundancy = Subspace::from_span(ds.n, rows);
  for (const auto& p : j.at("plans")) {
    Plan plan;
    std::string coeffs = p.at("coeffs").get<std::string>();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] == '1') plan.coeffs |= std::uint64_t(1) << i;
    for (const auto& probe : p.at("probes"))
      plan.probes.push_back(probe.get<int>() - 1);
    ds.plans.emplace(BitVector::from_string(p.at("query").get<std::string>()),
                     std::move(plan));
  }
  return ds;
}

}  // namespace rigidlab
