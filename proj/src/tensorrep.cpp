#include "branecalc/tensorrep.hpp"

#include <algorithm>
#include <deque>
#include <vector>

#include "branecalc/errors.hpp"

namespace branecalc {

std::int64_t WeightMultiset::multiplicity(const Weight& w) const {
  auto it = entries.find(w);
  return it == entries.end() ? 0 : it->second;
}

mpz_class WeightMultiset::total() const {
  mpz_class t = 0;
  for (const auto& [w, m] : entries) t += m;
  return t;
}

std::int64_t TensorDecomposition::multiplicity(const Weight& nu) const {
  auto it = summands.find(nu);
  return it == summands.end() ? 0 : it->second;
}

namespace {

void require_dominant(const Subsystem& system, const Weight& lambda) {
  if (!system.is_dominant(lambda)) {
    throw DomainError("weight " + to_string(lambda) + " is not dominant for the system");
  }
}

struct DominantWeight {
  Weight weight;
  Weight depth;  // λ − μ in the simple-root basis
  std::int64_t height = 0;
};

// Dominant weights μ ≤ λ. Any two are joined by a chain of dominant weights
// differing by positive roots, so closure under "subtract a positive root and
// stay dominant" reaches all of them.
std::vector<DominantWeight> dominant_weights_below(const Subsystem& system, const Weight& lambda) {
  const RootSystem& rs = system.ambient();
  std::map<Weight, Weight> seen;  // weight -> depth
  std::deque<Weight> queue{lambda};
  seen.emplace(lambda, Weight::zero(rs.rank()));
  while (!queue.empty()) {
    const Weight mu = queue.front();
    queue.pop_front();
    const Weight depth = seen.at(mu);
    for (std::size_t r : system.positive_root_indices()) {
      Weight next = mu - rs.positive_roots()[r];
      if (!system.is_dominant(next) || seen.count(next)) continue;
      seen.emplace(next, depth + rs.positive_roots_in_simple_basis()[r]);
      queue.push_back(std::move(next));
    }
  }
  std::vector<DominantWeight> out;
  for (auto& [w, d] : seen) {
    std::int64_t h = 0;
    for (std::size_t k = 0; k < d.size(); ++k) h += d[k];
    out.push_back({w, d, h});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const DominantWeight& a, const DominantWeight& b) { return a.height < b.height; });
  return out;
}

}  // namespace

WeightMultiset weight_multiplicities(const Subsystem& system, const Weight& lambda) {
  require_dominant(system, lambda);
  const RootSystem& rs = system.ambient();
  const Weight r = rho(rs);
  const Weight lambda_rho2 = lambda + 2 * r;

  std::map<Weight, std::int64_t> dominant;
  auto mult_of = [&](const Weight& w) -> std::int64_t {
    auto it = dominant.find(system.make_dominant(w).weight);
    return it == dominant.end() ? 0 : it->second;
  };

  for (const DominantWeight& dw : dominant_weights_below(system, lambda)) {
    if (dw.height == 0) {
      dominant[dw.weight] = 1;
      continue;
    }
    // 6·[(λ+ρ)² − (μ+ρ)²] = 6·(λ−μ, λ+μ+2ρ), with λ−μ = Σ depth_j α_j.
    const Weight sum = lambda_rho2 + dw.weight;
    std::int64_t denom = 0;
    for (int j : system.simple_indices()) denom += dw.depth[j] * rs.scaled_pairing_with_simple_root(sum, j);
    std::int64_t numer = 0;
    for (std::size_t ridx : system.positive_root_indices()) {
      const Weight& alpha = rs.positive_roots()[ridx];
      Weight up = dw.weight + alpha;
      for (;;) {
        const std::int64_t m = mult_of(up);
        if (m == 0) break;
        numer += 2 * m * rs.scaled_pairing_with_root(up, ridx);
        up += alpha;
      }
    }
    if (denom <= 0 || numer % denom != 0) {
      throw ConsistencyError("Freudenthal recursion failed at " + to_string(dw.weight));
    }
    dominant[dw.weight] = numer / denom;
  }

  WeightMultiset out;
  for (const auto& [mu, m] : dominant) {
    if (m == 0) continue;
    std::deque<Weight> queue{mu};
    out.entries.emplace(mu, m);
    while (!queue.empty()) {
      const Weight w = queue.front();
      queue.pop_front();
      for (int i : system.simple_indices()) {
        Weight next = rs.reflect(i, w);
        if (out.entries.emplace(next, m).second) queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

Weight dual_irrep(const Subsystem& system, const Weight& alpha) {
  require_dominant(system, alpha);
  return system.make_dominant(-alpha).weight;
}

TensorDecomposition tensor_decompose(const Subsystem& system, const Weight& alpha, const Weight& beta) {
  require_dominant(system, alpha);
  require_dominant(system, beta);
  const bool alpha_smaller = system.weyl_dimension(alpha) <= system.weyl_dimension(beta);
  const Weight& small = alpha_smaller ? alpha : beta;
  const Weight& big = alpha_smaller ? beta : alpha;

  const Weight r = rho(system.ambient());
  const Weight shifted = big + r;
  std::map<Weight, std::int64_t> acc;
  for (const auto& [mu, n] : weight_multiplicities(system, small).entries) {
    const Weight x = shifted + mu;
    if (!system.is_regular(x)) continue;
    const auto dom = system.make_dominant(x);
    const std::int64_t sign = dom.word.length() % 2 == 0 ? 1 : -1;
    acc[dom.weight - r] += sign * n;
  }
  TensorDecomposition out;
  for (const auto& [nu, m] : acc) {
    if (m < 0) throw ConsistencyError("negative multiplicity for " + to_string(nu) + " in Klimyk sum");
    if (m > 0) out.summands.emplace(nu, m);
  }
  return out;
}

}  // namespace branecalc
