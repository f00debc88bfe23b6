#include "branecalc/toricfan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <json.hpp>

#include "branecalc/charseries.hpp"
#include "branecalc/errors.hpp"

namespace branecalc {

namespace {

using json = nlohmann::json;

// Determinant of a square integer matrix (rows), fraction-free elimination.
mpz_class determinant(const std::vector<LatticeVector>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return n == 0 ? mpz_class(1) : sign * a[n - 1][n - 1];
}

// Dual basis of the rows of a unimodular matrix: rows ω_i with ⟨ω_i, r_j⟩ = δ_ij,
// i.e. the inverse transpose.
std::vector<LatticeVector> dual_basis(const std::vector<LatticeVector>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) throw InputError("singular cone matrix", "not_smooth");
    std::swap(a[p], a[col]);
    const mpq_class pivot = a[col][col];
    for (auto& x : a[col]) x /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  // a[:, n:] = R⁻¹; ω_i is column i of R⁻¹.
  std::vector<LatticeVector> omega(n, LatticeVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = a[j][n + i];
      v.canonicalize();
      if (v.get_den() != 1) throw InputError("cone matrix is not unimodular", "not_smooth");
      omega[i][j] = to_int64(v.get_num(), "dual basis entry");
    }
  }
  return omega;
}

std::vector<LatticeVector> cone_rows(const Fan& fan, const std::vector<std::size_t>& cone) {
  std::vector<LatticeVector> rows;
  for (std::size_t r : cone) rows.push_back(fan.rays[r]);
  return rows;
}

std::string cone_text(const std::vector<std::size_t>& cone) {
  std::string s = "{";
  for (std::size_t i = 0; i < cone.size(); ++i) s += (i ? "," : "") + std::to_string(cone[i]);
  return s + "}";
}

bool check_completeness(const Fan& fan, const std::vector<FixedPoint>& points) {
  std::map<std::vector<std::size_t>, int> facets;
  for (const auto& cone : fan.max_cones) {
    std::vector<std::size_t> sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t drop = 0; drop < sorted.size(); ++drop) {
      std::vector<std::size_t> facet;
      for (std::size_t i = 0; i < sorted.size(); ++i)
        if (i != drop) facet.push_back(sorted[i]);
      ++facets[facet];
    }
  }
  if (std::any_of(facets.begin(), facets.end(), [](const auto& f) { return f.second != 2; })) return false;

  std::vector<LatticeVector> all;
  for (const auto& p : points) all.insert(all.end(), p.isotropy_weights.begin(), p.isotropy_weights.end());
  const GenericDirection x = choose_generic_direction(all, fan.dim);
  std::size_t containing = 0;
  for (const auto& p : points) {
    if (std::all_of(p.isotropy_weights.begin(), p.isotropy_weights.end(),
                    [&](const LatticeVector& w) { return dot(w, x.v) > 0; })) {
      ++containing;
    }
  }
  return containing == 1;
}

std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer", "syntax");
  return j.get<std::int64_t>();
}

LatticeVector as_vector(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of integers", "syntax");
  if (j.size() != dim) {
    throw InputError(where + ": expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()),
                     "syntax");
  }
  LatticeVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], where));
  return v;
}

}  // namespace

Fan make_fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones) {
  if (dim == 0) throw InputError("fan dimension must be positive", "syntax");
  Fan fan{dim, std::move(rays), std::move(max_cones), false};
  std::set<LatticeVector> distinct;
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& v = fan.rays[i];
    if (v.size() != dim) throw InputError("ray " + std::to_string(i) + " does not have dimension " + std::to_string(dim), "syntax");
    mpz_class g = 0;
    for (std::int64_t x : v) {
      const mpz_class z = x;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    }
    if (g != 1) {
      throw InputError("ray " + std::to_string(i) + " " + to_string(v) + " is not primitive (gcd " + g.get_str() + ")",
                       "non_primitive_ray");
    }
    if (!distinct.insert(v).second) throw InputError("ray " + std::to_string(i) + " is repeated", "bad_cone");
  }
  if (fan.max_cones.empty()) throw InputError("fan has no maximal cones", "bad_cone");
  std::vector<bool> used(fan.rays.size(), false);
  std::set<std::vector<std::size_t>> cones_seen;
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    const auto& cone = fan.max_cones[c];
    if (cone.size() != dim) {
      throw InputError("cone " + std::to_string(c) + " " + cone_text(cone) + " has " + std::to_string(cone.size()) +
                           " rays, expected " + std::to_string(dim),
                       "bad_cone");
    }
    for (std::size_t r : cone) {
      if (r >= fan.rays.size()) {
        throw InputError("cone " + std::to_string(c) + " refers to ray " + std::to_string(r) + " which does not exist",
                         "bad_cone");
      }
      used[r] = true;
    }
    std::vector<std::size_t> sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("cone " + std::to_string(c) + " " + cone_text(cone) + " repeats a ray", "bad_cone");
    }
    if (!cones_seen.insert(sorted).second) {
      throw InputError("cone " + std::to_string(c) + " " + cone_text(cone) + " is repeated", "bad_cone");
    }
    const mpz_class det = determinant(cone_rows(fan, cone));
    if (det != 1 && det != -1) {
      throw InputError("cone " + std::to_string(c) + " " + cone_text(cone) + " is not smooth: determinant " + det.get_str(),
                       "not_smooth");
    }
  }
  for (std::size_t r = 0; r < used.size(); ++r) {
    if (!used[r]) throw InputError("ray " + std::to_string(r) + " lies in no maximal cone", "bad_cone");
  }
  fan.complete = check_completeness(fan, fixed_points(fan));
  return fan;
}

std::vector<FixedPoint> fixed_points(const Fan& fan) {
  std::vector<FixedPoint> out;
  out.reserve(fan.max_cones.size());
  for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
    out.push_back({c, dual_basis(cone_rows(fan, fan.max_cones[c]))});
  }
  return out;
}

EquivBundleAtFixedPoints EquivLineBundle::at_fixed_points() const {
  EquivBundleAtFixedPoints out;
  for (const auto& m : local_weights) out.fiber_weights.push_back({m});
  return out;
}

EquivLineBundle bundle_from_divisor(const Fan& fan, std::span<const std::int64_t> coeffs) {
  if (coeffs.size() != fan.rays.size()) {
    throw InputError("divisor has " + std::to_string(coeffs.size()) + " coefficients, fan has " +
                     std::to_string(fan.rays.size()) + " rays");
  }
  EquivLineBundle out;
  out.divisor_coeffs.assign(coeffs.begin(), coeffs.end());
  for (const auto& p : fixed_points(fan)) {
    const auto& cone = fan.max_cones[p.cone_index];
    std::vector<mpz_class> m(fan.dim, 0);
    for (std::size_t i = 0; i < cone.size(); ++i)
      for (std::size_t k = 0; k < fan.dim; ++k) m[k] += mpz_class(coeffs[cone[i]]) * p.isotropy_weights[i][k];
    LatticeVector w;
    for (const auto& x : m) w.push_back(to_int64(x, "local weight"));
    out.local_weights.push_back(std::move(w));
  }
  return out;
}

EquivBundleAtFixedPoints direct_sum(const EquivBundleAtFixedPoints& a, const EquivBundleAtFixedPoints& b) {
  if (a.fiber_weights.size() != b.fiber_weights.size()) {
    throw InputError("direct sum of bundles over different numbers of fixed points");
  }
  EquivBundleAtFixedPoints out = a;
  for (std::size_t i = 0; i < b.fiber_weights.size(); ++i) {
    out.fiber_weights[i].insert(out.fiber_weights[i].end(), b.fiber_weights[i].begin(), b.fiber_weights[i].end());
  }
  return out;
}

bool is_nef(const Fan& fan, std::span<const std::int64_t> coeffs) {
  const EquivLineBundle line = bundle_from_divisor(fan, coeffs);
  for (const auto& m : line.local_weights) {
    for (std::size_t r = 0; r < fan.rays.size(); ++r) {
      if (dot(m, fan.rays[r]) > coeffs[r]) return false;
    }
  }
  return true;
}

FanFile parse_fan_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("fan file is not valid JSON: ") + e.what(), "syntax");
  }
  if (!doc.is_object()) throw InputError("fan file must hold a JSON object", "syntax");
  static const std::set<std::string> known{"dim", "rays", "max_cones", "divisor", "bundle_fixed_weights"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw InputError("unknown field '" + key + "' in fan file", "syntax");
  }
  for (const char* key : {"dim", "rays", "max_cones"}) {
    if (!doc.contains(key)) throw InputError(std::string("fan file lacks the field '") + key + "'", "syntax");
  }
  const std::int64_t dim = as_int(doc["dim"], "dim");
  if (dim <= 0) throw InputError("dim must be positive", "syntax");
  const auto n = static_cast<std::size_t>(dim);

  if (!doc["rays"].is_array()) throw InputError("rays: expected an array", "syntax");
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < doc["rays"].size(); ++i) rays.push_back(as_vector(doc["rays"][i], n, "rays[" + std::to_string(i) + "]"));

  if (!doc["max_cones"].is_array()) throw InputError("max_cones: expected an array", "syntax");
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t c = 0; c < doc["max_cones"].size(); ++c) {
    const json& jc = doc["max_cones"][c];
    const std::string where = "max_cones[" + std::to_string(c) + "]";
    if (!jc.is_array()) throw InputError(where + ": expected an array of ray indices", "syntax");
    std::vector<std::size_t> cone;
    for (const auto& idx : jc) {
      const std::int64_t r = as_int(idx, where);
      if (r < 0) throw InputError(where + ": negative ray index", "bad_cone");
      cone.push_back(static_cast<std::size_t>(r));
    }
    cones.push_back(std::move(cone));
  }

  FanFile out{make_fan(n, std::move(rays), std::move(cones)), std::nullopt, std::nullopt};
  if (doc.contains("divisor")) {
    out.divisor = as_vector(doc["divisor"], out.fan.rays.size(), "divisor");
  }
  if (doc.contains("bundle_fixed_weights")) {
    const json& jb = doc["bundle_fixed_weights"];
    if (!jb.is_array() || jb.size() != out.fan.max_cones.size()) {
      throw InputError("bundle_fixed_weights: expected one entry per maximal cone", "syntax");
    }
    EquivBundleAtFixedPoints bundle;
    for (std::size_t c = 0; c < jb.size(); ++c) {
      const std::string where = "bundle_fixed_weights[" + std::to_string(c) + "]";
      if (!jb[c].is_array()) throw InputError(where + ": expected an array of weights", "syntax");
      std::vector<LatticeVector> weights;
      for (std::size_t j = 0; j < jb[c].size(); ++j) weights.push_back(as_vector(jb[c][j], n, where));
      if (c > 0 && weights.size() != bundle.fiber_weights.front().size()) {
        throw InputError(where + ": rank differs from the first fixed point", "rank_mismatch");
      }
      bundle.fiber_weights.push_back(std::move(weights));
    }
    out.bundle_fixed_weights = std::move(bundle);
  }
  return out;
}

Fan parse_fan(std::string_view text) { return parse_fan_file(text).fan; }

Fan projective_space(std::size_t n) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.emplace_back(n, -1);
  std::vector<std::vector<std::size_t>> cones;
  // Standard chart (all coordinate rays) first.
  for (std::size_t skip = n + 1; skip-- > 0;) {
    std::vector<std::size_t> cone;
    for (std::size_t r = 0; r <= n; ++r)
      if (r != skip) cone.push_back(r);
    cones.push_back(cone);
  }
  return make_fan(n, std::move(rays), std::move(cones));
}

Fan hirzebruch(std::int64_t a) {
  return make_fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan product(const Fan& a, const Fan& b) {
  const std::size_t n = a.dim + b.dim;
  std::vector<LatticeVector> rays;
  for (const auto& r : a.rays) {
    LatticeVector v(n, 0);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(v);
  }
  for (const auto& r : b.rays) {
    LatticeVector v(n, 0);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(a.dim));
    rays.push_back(v);
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& ca : a.max_cones) {
    for (const auto& cb : b.max_cones) {
      std::vector<std::size_t> cone = ca;
      for (std::size_t r : cb) cone.push_back(r + a.rays.size());
      cones.push_back(cone);
    }
  }
  return make_fan(n, std::move(rays), std::move(cones));
}

}  // namespace branecalc
