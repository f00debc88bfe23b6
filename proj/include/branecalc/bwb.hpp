#pragma once

// Borel–Weil–Bott cohomology of homogeneous bundles on a flag manifold G/Q,
// and the string (Ext) spaces between line-bundle and vector-bundle branes.

#include <cstddef>
#include <optional>

#include "branecalc/rootsys.hpp"

namespace branecalc {

/// Cohomology of an irreducible homogeneous bundle: either zero in every
/// degree, or a single G-irreducible in one degree.
struct CohomologyResult {
  bool vanishes_identically = true;
  std::size_t degree = 0;
  Weight highest_weight;
  mpz_class dimension = 0;

  static CohomologyResult vanishing() { return {}; }
  /// dim H^p, 0 away from `degree`.
  mpz_class dimension_in_degree(std::size_t p) const {
    return !vanishes_identically && p == degree ? dimension : mpz_class(0);
  }
};

/// ξ is a character of Q: zero at every Levi index.
bool validate_q_character(const RootSystem& rs, const ParabolicSubset& q, const Weight& xi);

/// H^*(G/Q, L_ξ). Throws DomainError if ξ is not a character of Q.
CohomologyResult line_bundle_cohomology(const RootSystem& rs, const ParabolicSubset& q, const Weight& xi);

/// Ext^*(O(L_μ), O(L_λ)) = H^*(G/Q, L_{λ−μ}).
CohomologyResult string_space_line_bundles(const RootSystem& rs, const ParabolicSubset& q,
                                           const Weight& mu, const Weight& lambda);

/// dim Ext^k(O(V(α)), O(V(β))) for irreducible Levi representations α, β,
/// given by highest weights dominant on the Levi indices.
mpz_class ext_dim_vector_bundles(const RootSystem& rs, const ParabolicSubset& q, const Weight& alpha,
                                 const Weight& beta, std::size_t k);

}  // namespace branecalc
