#pragma once

// Brute-force reference computations used by the tests. None of these call
// into the code path they check: the Weyl group is enumerated as a set of
// matrices, multiplicities come from Kostant's partition-function formula,
// and lattice sums are evaluated pointwise.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "branecalc/rootsys.hpp"

namespace oracle {

using branecalc::IntMatrix;
using branecalc::RootSystem;
using branecalc::Weight;

inline Weight act(const IntMatrix& m, const Weight& w) {
  Weight out = Weight::zero(w.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * w[j];
  return out;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// Matrix of s_i on fundamental-weight coordinates (column vectors).
inline IntMatrix reflection_matrix(const RootSystem& rs, int i) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) m[j][j] = 1;
  // (s_i λ)_j = λ_j − λ_i·C[i][j]
  for (std::size_t j = 0; j < n; ++j) m[j][i] -= rs.cartan_matrix()[i][j];
  return m;
}

struct GroupElement {
  IntMatrix matrix;
  std::size_t length;
};

/// Every element of W with its Coxeter length (BFS distance from 1).
inline std::vector<GroupElement> weyl_group(const RootSystem& rs) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  IntMatrix id(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  std::vector<IntMatrix> gens;
  for (int i = 0; i < rs.rank(); ++i) gens.push_back(reflection_matrix(rs, i));
  std::map<IntMatrix, std::size_t> seen{{id, 0}};
  std::vector<GroupElement> out{{id, 0}};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      IntMatrix next = multiply(g, out[head].matrix);
      if (seen.emplace(next, out[head].length + 1).second) out.push_back({next, out[head].length + 1});
    }
  }
  return out;
}

/// All roots as the W-orbit of the simple roots (fundamental coordinates);
/// returns those that are non-negative combinations of simple roots.
inline std::set<Weight> positive_roots_by_orbit(const RootSystem& rs) {
  std::set<Weight> roots;
  for (const auto& w : weyl_group(rs))
    for (const auto& a : rs.simple_roots()) roots.insert(act(w.matrix, a));
  // Express in the simple-root basis by solving Cᵀ c = λ over ℚ.
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  std::set<Weight> positive;
  for (const auto& r : roots) {
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) a[i][k] = rs.cartan_matrix()[k][i];
      a[i][n] = r[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      while (a[p][col] == 0) ++p;
      std::swap(a[p], a[col]);
      const mpq_class piv = a[col][col];
      for (auto& x : a[col]) x /= piv;
      for (std::size_t row = 0; row < n; ++row) {
        if (row == col) continue;
        const mpq_class f = a[row][col];
        for (std::size_t c = 0; c <= n; ++c) a[row][c] -= f * a[col][c];
      }
    }
    bool nonneg = true;
    for (std::size_t i = 0; i < n; ++i) nonneg = nonneg && a[i][n] >= 0;
    if (nonneg) positive.insert(r);
  }
  return positive;
}

/// λ in the simple-root basis, or nullopt when not an integral combination.
inline std::optional<std::vector<std::int64_t>> to_root_basis(const RootSystem& rs, const Weight& lambda) {
  const std::size_t n = static_cast<std::size_t>(rs.rank());
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) a[i][k] = rs.cartan_matrix()[k][i];
    a[i][n] = lambda[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (a[p][col] == 0) ++p;
    std::swap(a[p], a[col]);
    const mpq_class piv = a[col][col];
    for (auto& x : a[col]) x /= piv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const mpq_class f = a[row][col];
      for (std::size_t c = 0; c <= n; ++c) a[row][c] -= f * a[col][c];
    }
  }
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i][n].canonicalize();
    if (a[i][n].get_den() != 1) return std::nullopt;
    out[i] = a[i][n].get_num().get_si();
  }
  return out;
}

/// Kostant partition function: ways to write γ (simple-root basis) as a sum
/// of positive roots (simple-root basis).
class PartitionFunction {
 public:
  explicit PartitionFunction(std::vector<std::vector<std::int64_t>> roots) : roots_(std::move(roots)) {}

  std::int64_t operator()(const std::vector<std::int64_t>& gamma) { return count(gamma, 0); }

 private:
  std::int64_t count(const std::vector<std::int64_t>& gamma, std::size_t from) {
    for (auto x : gamma)
      if (x < 0) return 0;
    bool zero = true;
    for (auto x : gamma) zero = zero && x == 0;
    if (zero) return 1;
    if (from == roots_.size()) return 0;
    auto key = std::make_pair(gamma, from);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t total = count(gamma, from + 1);
    std::vector<std::int64_t> g = gamma;
    for (;;) {
      bool ok = true;
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] -= roots_[from][i];
        ok = ok && g[i] >= 0;
      }
      if (!ok) break;
      total += count(g, from + 1);
    }
    memo_[key] = total;
    return total;
  }

  std::vector<std::vector<std::int64_t>> roots_;
  std::map<std::pair<std::vector<std::int64_t>, std::size_t>, std::int64_t> memo_;
};

/// Kostant's multiplicity formula: m_λ(μ) = Σ_w sign(w) P(w(λ+ρ) − (μ+ρ)).
class KostantMultiplicity {
 public:
  explicit KostantMultiplicity(const RootSystem& rs) : rs_(rs), group_(weyl_group(rs)), partitions_({}) {
    std::vector<std::vector<std::int64_t>> roots;
    for (const auto& r : positive_roots_by_orbit(rs)) roots.push_back(*to_root_basis(rs, r));
    partitions_ = PartitionFunction(std::move(roots));
  }

  std::int64_t operator()(const Weight& lambda, const Weight& mu) {
    const Weight rho(std::vector<std::int64_t>(static_cast<std::size_t>(rs_.rank()), 1));
    std::int64_t total = 0;
    for (const auto& w : group_) {
      const auto gamma = to_root_basis(rs_, act(w.matrix, lambda + rho) - (mu + rho));
      if (!gamma) continue;
      const std::int64_t p = partitions_(*gamma);
      total += w.length % 2 == 0 ? p : -p;
    }
    return total;
  }

 private:
  const RootSystem& rs_;
  std::vector<GroupElement> group_;
  PartitionFunction partitions_;
};

/// All dominant weights with non-negative coordinates summing to at most `max_sum`.
inline std::vector<Weight> dominant_weights_up_to(int rank, std::int64_t max_sum) {
  std::vector<Weight> out;
  Weight w = Weight::zero(static_cast<std::size_t>(rank));
  for (;;) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i];
    if (s <= max_sum) out.push_back(w);
    std::size_t k = 0;
    while (k < w.size() && w[k] == max_sum) {
      w[k] = 0;
      ++k;
    }
    if (k == w.size()) break;
    ++w[k];
  }
  return out;
}

}  // namespace oracle
