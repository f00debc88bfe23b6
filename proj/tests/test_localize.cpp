#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "branecalc/errors.hpp"
#include "branecalc/localize.hpp"

using namespace branecalc;

namespace {

std::vector<Fan> corpus() {
  std::vector<Fan> fans{projective_space(1), projective_space(2), projective_space(3),
                        product(projective_space(1), projective_space(1))};
  for (std::int64_t a = 0; a <= 3; ++a) fans.push_back(hirzebruch(a));
  return fans;
}

// Lattice points of {u : ⟨u,v_ρ⟩ ≥ −a_ρ} by scanning a fixed cube; fine for
// the small fans and coefficients used here.
std::vector<LatticeVector> points_in_cube(const Fan& fan, std::span<const std::int64_t> a, std::int64_t radius) {
  std::vector<LatticeVector> out;
  LatticeVector u(fan.dim, -radius);
  for (;;) {
    bool inside = true;
    for (std::size_t r = 0; r < fan.rays.size(); ++r) inside = inside && dot(u, fan.rays[r]) >= -a[r];
    if (inside) out.push_back(u);
    std::size_t k = 0;
    while (k < fan.dim && u[k] == radius) u[k++] = -radius;
    if (k == fan.dim) return out;
    ++u[k];
  }
}

// Every coefficient vector in [0, max]^rays, filtered by is_nef.
std::vector<std::vector<std::int64_t>> nef_divisors(const Fan& fan, std::int64_t max) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> a(fan.rays.size(), 0);
  for (;;) {
    if (is_nef(fan, a)) out.push_back(a);
    std::size_t k = 0;
    while (k < a.size() && a[k] == max) a[k++] = 0;
    if (k == a.size()) return out;
    ++a[k];
  }
}

}  // namespace

TEST_CASE("chern_character_at_fixed_points") {
  const Fan p1 = projective_space(1);
  const std::vector<std::int64_t> trivial{0, 0};
  for (const auto& s : chern_character_at_fixed_points(p1, bundle_from_divisor(p1, trivial).at_fixed_points()))
    CHECK(s == ExpSum::monomial({0}));
  const std::vector<std::int64_t> o2{2, 0};
  const auto ch = chern_character_at_fixed_points(p1, bundle_from_divisor(p1, o2).at_fixed_points());
  CHECK(ch == std::vector<ExpSum>{ExpSum::monomial({2}), ExpSum::monomial({0})});

  const std::vector<std::int64_t> o1{1, 0};
  const auto sum = direct_sum(bundle_from_divisor(p1, trivial).at_fixed_points(), bundle_from_divisor(p1, o1).at_fixed_points());
  const auto ch2 = chern_character_at_fixed_points(p1, sum);
  CHECK(ch2[0] == ExpSum::monomial({0}) + ExpSum::monomial({1}));
  CHECK(ch2[1] == ExpSum::monomial({0}, 2));
  for (const auto& s : ch2) CHECK(s.total() == 2);

  EquivBundleAtFixedPoints ragged{{{{0}}, {{0}, {1}}}};
  CHECK_THROWS_AS(chern_character_at_fixed_points(p1, ragged), InputError);
  EquivBundleAtFixedPoints short_data{{{{0}}}};
  CHECK_THROWS_AS(chern_character_at_fixed_points(p1, short_data), InputError);
}

TEST_CASE("equivariant_charge keeps the Todd factor unexpanded") {
  const Fan p2 = projective_space(2);
  const std::vector<std::int64_t> o1{0, 0, 1};
  const auto charge = equivariant_charge(p2, bundle_from_divisor(p2, o1).at_fixed_points());
  REQUIRE(charge.size() == 3);
  const auto points = fixed_points(p2);
  for (std::size_t x = 0; x < 3; ++x) {
    CHECK(charge[x].cone_index == x);
    CHECK(charge[x].todd_denominator == points[x].isotropy_weights);
    CHECK(charge[x].chern.total() == 1);
  }
}

TEST_CASE("localization_index: examples") {
  const Fan p1 = projective_space(1);
  for (std::int64_t d = 0; d <= 6; ++d) {
    const std::vector<std::int64_t> a{d, 0};
    CHECK(localization_index(p1, a).index == d + 1);
  }
  CHECK(localization_index(p1, std::vector<std::int64_t>{-1, 0}).index == 0);
  // Serre duality on P¹: χ(O(d)) = d + 1 holds for all d.
  for (std::int64_t d = -6; d < 0; ++d) CHECK(localization_index(p1, std::vector<std::int64_t>{0, d}).index == d + 1);

  const Fan p2 = projective_space(2);
  CHECK(localization_index(p2, std::vector<std::int64_t>{0, 0, 1}).index == 3);
  CHECK(localization_index(p2, std::vector<std::int64_t>{0, 0, 0}).index == 1);
  // χ(P², O(−3)) = h² = 1; χ(O(−1)) = χ(O(−2)) = 0.
  CHECK(localization_index(p2, std::vector<std::int64_t>{-1, -1, -1}).index == 1);
  CHECK(localization_index(p2, std::vector<std::int64_t>{0, 0, -1}).index == 0);
  CHECK(localization_index(p2, std::vector<std::int64_t>{0, -1, -1}).index == 0);

  const auto r = localization_index(p1, std::vector<std::int64_t>{2, 0});
  CHECK(r.terms.size() == 2);
  CHECK(r.direction.v == LatticeVector{1});
}

TEST_CASE("localization_index rejects incomplete fans and bad data") {
  const Fan affine = make_fan(2, {{1, 0}, {0, 1}}, {{0, 1}});
  CHECK_THROWS_AS(localization_index(affine, std::vector<std::int64_t>{0, 0}), DomainError);
  const Fan p1 = projective_space(1);
  CHECK_THROWS_AS(localization_index(p1, std::vector<std::int64_t>{0}), InputError);
  LocalizationOptions bad;
  bad.direction = GenericDirection{{0}};
  CHECK_THROWS_AS(localization_index(p1, std::vector<std::int64_t>{0, 0}, bad), GenericityError);
  // Fixed-point weights that do not glue leave a pole.
  const Fan p2 = projective_space(2);
  const EquivBundleAtFixedPoints skew{{{{0, 0}}, {{0, 0}}, {{5, 0}}}};
  CHECK_THROWS_AS(localization_index(p2, skew), PoleError);
}

TEST_CASE("lattice_point_character") {
  const Fan p1 = projective_space(1);
  CHECK(lattice_point_character(p1, std::vector<std::int64_t>{2, 0}) ==
        ExpSum::monomial({0}) + ExpSum::monomial({-1}) + ExpSum::monomial({-2}));
  CHECK(lattice_point_character(p1, std::vector<std::int64_t>{0, 2}) ==
        ExpSum::monomial({0}) + ExpSum::monomial({1}) + ExpSum::monomial({2}));
  CHECK(lattice_point_character(projective_space(2), std::vector<std::int64_t>{0, 0, 0}) == ExpSum::monomial({0, 0}));
  CHECK(lattice_point_character(projective_space(2), std::vector<std::int64_t>{1, 0, 0}).total() == 3);
  CHECK(lattice_point_character(p1, std::vector<std::int64_t>{-1, 0}).is_zero());
  const Fan affine = make_fan(2, {{1, 0}, {0, 1}}, {{0, 1}});
  CHECK_THROWS_AS(lattice_point_character(affine, std::vector<std::int64_t>{0, 0}), DomainError);
}

TEST_CASE("property: lattice_point_character against a cube scan") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coeff(-2, 4);
  for (const auto& fan : corpus()) {
    for (int t = 0; t < 20; ++t) {
      std::vector<std::int64_t> a(fan.rays.size());
      for (auto& x : a) x = coeff(rng);
      ExpSum expected;
      for (const auto& u : points_in_cube(fan, a, 20)) expected.add_term(u, 1);
      CHECK(lattice_point_character(fan, a) == expected);
    }
  }
}

TEST_CASE("property: localization equals the lattice count for nef divisors") {
  for (const auto& fan : corpus()) {
    for (const auto& a : nef_divisors(fan, fan.dim == 3 ? 2 : 3)) {
      const auto result = localization_index(fan, a);
      const auto points = points_in_cube(fan, a, 15);
      CHECK(result.index == static_cast<long>(points.size()));
      // Stronger: the restricted character itself is Σ_u q^{−⟨u,v⟩}.
      RatFunc total;
      for (const auto& term : result.terms) total += term;
      RatFunc expected;
      for (const auto& u : points) expected += RatFunc::monomial(-restrict_exponent(u, result.direction));
      CHECK(total == expected);
    }
  }
}

TEST_CASE("property: chi(O) = 1") {
  for (const auto& fan : corpus()) {
    const std::vector<std::int64_t> zero(fan.rays.size(), 0);
    CHECK(localization_index(fan, zero).index == 1);
  }
}

TEST_CASE("property: twisted additivity") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (const auto& fan : corpus()) {
    for (int t = 0; t < 8; ++t) {
      std::vector<std::int64_t> a(fan.rays.size()), b(fan.rays.size());
      for (auto& x : a) x = coeff(rng);
      for (auto& x : b) x = coeff(rng);
      const auto va = bundle_from_divisor(fan, a).at_fixed_points();
      const auto vb = bundle_from_divisor(fan, b).at_fixed_points();
      CHECK(localization_index(fan, direct_sum(va, vb)).index ==
            localization_index(fan, va).index + localization_index(fan, vb).index);
    }
  }
}

TEST_CASE("property: direction, permutation and thread-count independence") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (const auto& fan : corpus()) {
    for (int t = 0; t < 6; ++t) {
      std::vector<std::int64_t> a(fan.rays.size());
      for (auto& x : a) x = coeff(rng);
      const auto base = localization_index(fan, a);
      for (int esc = 1; esc <= 3; ++esc) {
        LocalizationOptions o;
        o.escalation = esc;
        const auto r = localization_index(fan, a, o);
        if (fan.dim > 1) CHECK(r.direction != base.direction);
        CHECK(r.index == base.index);
      }
      LocalizationOptions threaded;
      threaded.jobs = 3;
      const auto r = localization_index(fan, a, threaded);
      CHECK(r.terms == base.terms);
      CHECK(r.index == base.index);

      // Permute the cones (and with them the fixed points).
      std::vector<std::size_t> perm(fan.max_cones.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::vector<std::size_t>> cones;
      for (auto i : perm) cones.push_back(fan.max_cones[i]);
      const Fan shuffled = make_fan(fan.dim, fan.rays, cones);
      const auto s = localization_index(shuffled, a);
      CHECK(s.index == base.index);
      for (std::size_t i = 0; i < perm.size(); ++i) CHECK(s.terms[i] == base.terms[perm[i]]);
    }
  }
}

TEST_CASE("koszul_charge") {
  for (unsigned r = 1; r <= 12; ++r) {
    CHECK(koszul_charge(r).is_zero());
    CHECK(koszul_charge(r, 3).is_zero());
  }
  CHECK_THROWS_AS(koszul_charge(0), InputError);
}
