#include "rigidlab/queryset.hpp"

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rigidlab/gf2.hpp"

namespace rigidlab {

bool QuerySet::same_elements(const QuerySet& o) const {
  if (n != o.n || vectors.size() != o.vectors.size()) return false;
  std::set<BitVector> a(vectors.begin(), vectors.end());
  std::set<BitVector> b(o.vectors.begin(), o.vectors.end());
  return a == b;
}

QuerySet gen_upsilon(int root, const Caps& caps) {
  if (root < 1) throw std::invalid_argument("root must be >= 1");
  if (2 * root > caps.max_input_log2)
    throw CapExceeded("2^(2*root) pair enumeration exceeds input cap");
  QuerySet q;
  q.n = root * root;
  q.name = "upsilon:" + std::to_string(root);
  std::set<BitVector> seen;
  std::uint64_t count = std::uint64_t(1) << root;
  for (std::uint64_t ub = 0; ub < count; ++ub) {
    BitVector u = BitVector::from_bits(root, ub);
    for (std::uint64_t vb = 0; vb < count; ++vb) {
      BitVector v = BitVector::from_bits(root, vb);
      BitVector x = vec(outer(u, v));
      if (seen.insert(x).second) q.vectors.push_back(std::move(x));
    }
  }
  return q;
}

QuerySet gen_prefix(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  QuerySet q;
  q.n = n;
  q.name = "prefix:" + std::to_string(n);
  for (int i = 1; i <= n; ++i) {
    BitVector v(n);
    for (int j = 0; j < i; ++j) v.set(j, true);
    q.vectors.push_back(std::move(v));
  }
  return q;
}

QuerySet gen_random(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("need n >= 1 and m >= 1");
  if (n < 63 && static_cast<unsigned long long>(m) > (1ull << n))
    throw std::invalid_argument("m exceeds 2^n");
  QuerySet q;
  q.n = n;
  q.name = "random:" + std::to_string(n) + ":" + std::to_string(m) + ":" +
           std::to_string(seed);
  std::mt19937_64 rng(seed);
  std::set<BitVector> seen;
  while (static_cast<int>(q.vectors.size()) < m) {
    BitVector v(n);
    for (int w = 0; w < n; w += 64) {
      std::uint64_t bits = rng();
      for (int i = w; i < std::min(n, w + 64); ++i)
        if ((bits >> (i - w)) & 1) v.set(i, true);
    }
    if (seen.insert(v).second) q.vectors.push_back(std::move(v));
  }
  return q;
}

bool four_query_identity(const BitMatrix& m, const BitVector& u,
                         const BitVector& v, int i, int j) {
  auto bilinear = [&](const BitVector& a, const BitVector& b) {
    return a.dot(m.mul(b));
  };
  BitVector ui = u ^ BitVector::unit(u.size(), i);
  BitVector vj = v ^ BitVector::unit(v.size(), j);
  int sum = bilinear(u, v) ^ bilinear(ui, v) ^ bilinear(u, vj) ^ bilinear(ui, vj);
  return sum == (m.get(i, j) ? 1 : 0);
}

QuerySet load_queryset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  QuerySet q;
  q.name = path;
  std::map<BitVector, int> first_line;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    BitVector v;
    try {
      v = BitVector::from_string(line);
    } catch (const ParseError&) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": non-01 character");
    }
    if (q.vectors.empty()) {
      q.n = v.size();
    } else if (v.size() != q.n) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": line length " + std::to_string(v.size()) +
                       " differs from first vector length " +
                       std::to_string(q.n));
    }
    auto [it, inserted] = first_line.emplace(v, lineno);
    if (!inserted)
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": duplicate of line " + std::to_string(it->second));
    q.vectors.push_back(std::move(v));
  }
  if (q.vectors.empty()) throw ParseError(path + ": no vectors");
  return q;
}

void save_queryset(const QuerySet& q, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& v : q.vectors) out << v.str() << "\n";
}

QuerySet resolve_queryset(const std::string& uri, const Caps& caps) {
  if (uri.rfind("builtin:", 0) != 0) return load_queryset(uri);
  std::vector<std::string> parts;
  std::stringstream ss(uri);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto num = [&](const std::string& s) -> long long {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("malformed builtin query set uri: " + uri);
    }
  };
  if (parts.size() == 3 && parts[1] == "upsilon")
    return gen_upsilon(static_cast<int>(num(parts[2])), caps);
  if (parts.size() == 3 && parts[1] == "prefix")
    return gen_prefix(static_cast<int>(num(parts[2])));
  if (parts.size() == 5 && parts[1] == "random")
    return gen_random(static_cast<int>(num(parts[2])),
                      static_cast<int>(num(parts[3])),
                      static_cast<std::uint64_t>(num(parts[4])));
  throw ParseError("unknown builtin query set uri: " + uri);
}

}  // namespace rigidlab
