#include "branecalc/localize.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "branecalc/errors.hpp"

namespace branecalc {

namespace {

void check_bundle(const Fan& fan, const EquivBundleAtFixedPoints& bundle) {
  if (bundle.fiber_weights.size() != fan.max_cones.size()) {
    throw InputError("bundle data covers " + std::to_string(bundle.fiber_weights.size()) + " fixed points, fan has " +
                     std::to_string(fan.max_cones.size()));
  }
  const std::size_t rank = bundle.rank();
  for (std::size_t x = 0; x < bundle.fiber_weights.size(); ++x) {
    if (bundle.fiber_weights[x].size() != rank) {
      throw InputError("bundle rank " + std::to_string(bundle.fiber_weights[x].size()) + " at fixed point " +
                           std::to_string(x) + " differs from rank " + std::to_string(rank),
                       "rank_mismatch");
    }
    for (const auto& w : bundle.fiber_weights[x]) {
      if (w.size() != fan.dim) throw InputError("fiber weight " + to_string(w) + " has the wrong dimension");
    }
  }
}

// Solves ⟨u, rows_i⟩ = rhs_i; nullopt when the rows are dependent.
std::optional<std::vector<mpq_class>> solve(const std::vector<LatticeVector>& rows, const std::vector<mpq_class>& rhs) {
  const std::size_t n = rows.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
    a[i][n] = rhs[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    const mpq_class pivot = a[col][col];
    for (auto& x : a[col]) x /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<mpq_class> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = a[i][n];
  return u;
}

std::size_t matrix_rank(std::vector<std::vector<mpq_class>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
    std::size_t p = rank;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const mpq_class f = a[r][col] / a[rank][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

mpz_class minor_determinant(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return 0;
    if (p != col) {
      std::swap(a[p], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const mpq_class f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  det.canonicalize();
  return det.get_num();
}

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// {u : ⟨u, v_ρ⟩ ≥ 0 ∀ρ} = {0}. A nonzero recession cone either contains a
// line (the rays do not span) or has an extreme ray, which is cut out by
// n−1 independent tight constraints.
bool recession_cone_is_trivial(const Fan& fan) {
  const std::size_t n = fan.dim;
  std::vector<std::vector<mpq_class>> all;
  for (const auto& r : fan.rays) all.emplace_back(r.begin(), r.end());
  if (matrix_rank(all) < n) return false;
  bool trivial = true;
  for_each_subset(fan.rays.size(), n - 1, [&](const std::vector<std::size_t>& subset) {
    if (!trivial) return;
    // Generalized cross product of the n−1 chosen rays.
    LatticeVector u(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::vector<mpq_class>> minor;
      for (std::size_t r : subset) {
        std::vector<mpq_class> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != k) row.emplace_back(fan.rays[r][c]);
        minor.push_back(std::move(row));
      }
      const mpz_class d = minor_determinant(std::move(minor));
      u[k] = to_int64(k % 2 == 0 ? d : mpz_class(-d), "recession direction");
    }
    if (std::all_of(u.begin(), u.end(), [](std::int64_t x) { return x == 0; })) return;
    for (int sign : {1, -1}) {
      bool feasible = true;
      for (const auto& ray : fan.rays) {
        if (sign * dot(u, ray) < 0) {
          feasible = false;
          break;
        }
      }
      if (feasible) trivial = false;
    }
  });
  return trivial;
}

mpz_class floor_of(const mpq_class& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

mpz_class ceil_of(const mpq_class& x) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c;
}

}  // namespace

std::vector<ExpSum> chern_character_at_fixed_points(const Fan& fan, const EquivBundleAtFixedPoints& bundle) {
  check_bundle(fan, bundle);
  std::vector<ExpSum> out;
  for (const auto& weights : bundle.fiber_weights) {
    ExpSum s;
    for (const auto& m : weights) s.add_term(m, 1);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ChargeAtFixedPoint> equivariant_charge(const Fan& fan, const EquivBundleAtFixedPoints& bundle) {
  auto chern = chern_character_at_fixed_points(fan, bundle);
  std::vector<ChargeAtFixedPoint> out;
  for (auto& p : fixed_points(fan)) {
    out.push_back({p.cone_index, std::move(chern[p.cone_index]), std::move(p.isotropy_weights)});
  }
  return out;
}

LocalizationResult localization_index(const Fan& fan, const EquivBundleAtFixedPoints& bundle,
                                      const LocalizationOptions& options) {
  if (!fan.complete) throw DomainError("localization needs a complete fan", "incomplete_fan");
  check_bundle(fan, bundle);
  const auto points = fixed_points(fan);

  LocalizationResult result;
  if (options.direction) {
    result.direction = *options.direction;
    if (result.direction.v.size() != fan.dim) throw InputError("direction " + to_string(result.direction.v) + " has the wrong dimension");
  } else {
    std::vector<LatticeVector> all;
    for (const auto& p : points) all.insert(all.end(), p.isotropy_weights.begin(), p.isotropy_weights.end());
    result.direction = choose_generic_direction(all, fan.dim, options.escalation);
  }

  result.terms.resize(points.size());
  auto compute = [&](std::size_t x) {
    result.terms[x] = localization_term(bundle.fiber_weights[points[x].cone_index], points[x].isotropy_weights,
                                        result.direction);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(points.size())));
  if (jobs == 1) {
    for (std::size_t x = 0; x < points.size(); ++x) compute(x);
  } else {
    std::vector<std::future<void>> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t x = w; x < points.size(); x += jobs) compute(x);
      }));
    }
    for (auto& f : workers) f.get();
  }
  result.index = sum_and_evaluate_at_one(result.terms);
  return result;
}

LocalizationResult localization_index(const Fan& fan, std::span<const std::int64_t> divisor,
                                      const LocalizationOptions& options) {
  return localization_index(fan, bundle_from_divisor(fan, divisor).at_fixed_points(), options);
}

ExpSum lattice_point_character(const Fan& fan, std::span<const std::int64_t> divisor) {
  if (divisor.size() != fan.rays.size()) {
    throw InputError("divisor has " + std::to_string(divisor.size()) + " coefficients, fan has " +
                     std::to_string(fan.rays.size()) + " rays");
  }
  if (!recession_cone_is_trivial(fan)) {
    throw DomainError("section polytope is unbounded: the rays do not positively span N", "unbounded_polytope");
  }
  const std::size_t n = fan.dim;
  auto feasible = [&](const auto& u) {
    for (std::size_t r = 0; r < fan.rays.size(); ++r) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < n; ++k) s += u[k] * fan.rays[r][k];
      if (s < -divisor[r]) return false;
    }
    return true;
  };

  // The polytope is the hull of its vertices; each vertex is cut out by n
  // independent tight inequalities.
  std::optional<std::vector<mpq_class>> lo, hi;
  for_each_subset(fan.rays.size(), n, [&](const std::vector<std::size_t>& subset) {
    std::vector<LatticeVector> rows;
    std::vector<mpq_class> rhs;
    for (std::size_t r : subset) {
      rows.push_back(fan.rays[r]);
      rhs.emplace_back(-divisor[r]);
    }
    const auto u = solve(rows, rhs);
    if (!u || !feasible(*u)) return;
    if (!lo) {
      lo = *u;
      hi = *u;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if ((*u)[k] < (*lo)[k]) (*lo)[k] = (*u)[k];
      if ((*u)[k] > (*hi)[k]) (*hi)[k] = (*u)[k];
    }
  });
  ExpSum out;
  if (!lo) return out;

  std::vector<std::int64_t> low(n), high(n);
  for (std::size_t k = 0; k < n; ++k) {
    low[k] = to_int64(ceil_of((*lo)[k]), "bounding box");
    high[k] = to_int64(floor_of((*hi)[k]), "bounding box");
    if (low[k] > high[k]) return out;
  }
  LatticeVector u = low;
  for (;;) {
    bool inside = true;
    for (std::size_t r = 0; r < fan.rays.size() && inside; ++r) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += u[k] * fan.rays[r][k];
      inside = s >= -divisor[r];
    }
    if (inside) out.add_term(u, 1);
    std::size_t k = 0;
    while (k < n && u[k] == high[k]) {
      u[k] = low[k];
      ++k;
    }
    if (k == n) break;
    ++u[k];
  }
  return out;
}

ExpSum koszul_charge(unsigned r, std::size_t dim) {
  if (r == 0) throw InputError("Koszul complex needs r >= 1");
  const ExpSum trivial = ExpSum::monomial(LatticeVector(dim, 0));
  ExpSum charge;
  for (unsigned k = 0; k <= r; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), r, k);
    ExpSum term = trivial;
    term *= (k % 2 == 0 ? binom : mpz_class(-binom));
    charge += term;
  }
  return charge;
}

}  // namespace branecalc
