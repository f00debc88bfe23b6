#include "branecalc/bwb.hpp"

#include <algorithm>

#include "branecalc/errors.hpp"
#include "branecalc/tensorrep.hpp"

namespace branecalc {

namespace {

// BWB for an irreducible homogeneous bundle whose Levi highest weight is ζ:
// the answer only depends on ζ + ρ.
CohomologyResult bott(const RootSystem& rs, const Weight& zeta) {
  const Weight shifted = zeta + rho(rs);
  if (!is_regular(rs, shifted)) return CohomologyResult::vanishing();
  const auto dom = make_dominant(rs, shifted);
  CohomologyResult out;
  out.vanishes_identically = false;
  out.degree = count_negative_roots(rs, shifted);
  out.highest_weight = dom.weight - rho(rs);
  out.dimension = weyl_dimension(rs, out.highest_weight);
  return out;
}

}  // namespace

bool validate_q_character(const RootSystem& rs, const ParabolicSubset& q, const Weight& xi) {
  rs.check_weight(xi);
  return std::all_of(q.levi.begin(), q.levi.end(), [&](int i) {
    if (i < 0 || i >= rs.rank()) throw InputError("Levi index out of range");
    return xi[i] == 0;
  });
}

CohomologyResult line_bundle_cohomology(const RootSystem& rs, const ParabolicSubset& q, const Weight& xi) {
  if (!validate_q_character(rs, q, xi)) {
    throw DomainError("weight " + to_string(xi) + " is not a character of Q (nonzero on a Levi index)",
                      "not_q_character");
  }
  return bott(rs, xi);
}

CohomologyResult string_space_line_bundles(const RootSystem& rs, const ParabolicSubset& q,
                                           const Weight& mu, const Weight& lambda) {
  for (const Weight* w : {&mu, &lambda}) {
    if (!validate_q_character(rs, q, *w)) {
      throw DomainError("weight " + to_string(*w) + " is not a character of Q (nonzero on a Levi index)",
                        "not_q_character");
    }
  }
  return line_bundle_cohomology(rs, q, lambda - mu);
}

mpz_class ext_dim_vector_bundles(const RootSystem& rs, const ParabolicSubset& q, const Weight& alpha,
                                 const Weight& beta, std::size_t k) {
  const Subsystem levi(rs, q);
  for (const Weight* w : {&alpha, &beta}) {
    if (!levi.is_dominant(*w)) {
      throw DomainError("weight " + to_string(*w) + " is not dominant for the Levi factor", "not_levi_dominant");
    }
  }
  // Hom(V(α), V(β)) = V(α* ⊗ β) = ⊕ m^τ V(τ)
  const auto decomposition = tensor_decompose(levi, dual_irrep(levi, alpha), beta);
  mpz_class total = 0;
  for (const auto& [tau, m] : decomposition.summands) {
    total += m * bott(rs, tau).dimension_in_degree(k);
  }
  return total;
}

}  // namespace branecalc
