#pragma once

// Equivariant charges of bundle branes on smooth complete toric varieties and
// their index by fixed-point localization, together with the lattice-point
// oracle and the Koszul charge identity.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "branecalc/charseries.hpp"
#include "branecalc/toricfan.hpp"

namespace branecalc {

/// Q^T restricted to one fixed point: the Chern character Σ_j e^{φ_j} and
/// the isotropy weights of the Todd factor, kept unexpanded.
struct ChargeAtFixedPoint {
  std::size_t cone_index = 0;
  ExpSum chern;
  std::vector<LatticeVector> todd_denominator;
};

/// Σ_j e^{φ_{j,x}} at every fixed point. Throws InputError on inconsistent
/// ranks or dimensions.
std::vector<ExpSum> chern_character_at_fixed_points(const Fan& fan, const EquivBundleAtFixedPoints& bundle);

std::vector<ChargeAtFixedPoint> equivariant_charge(const Fan& fan, const EquivBundleAtFixedPoints& bundle);

struct LocalizationOptions {
  /// Use this direction instead of the deterministic choice.
  std::optional<GenericDirection> direction;
  /// Added to the base K of the deterministic choice (1, K, K², …).
  int escalation = 0;
  /// Worker threads for the per-fixed-point terms; the result does not depend on it.
  unsigned jobs = 1;
};

struct LocalizationResult {
  GenericDirection direction;
  /// One term per fixed point, in max_cones order.
  std::vector<RatFunc> terms;
  mpq_class index;
};

/// Σ_x (Σ_j e^{φ_{j,x}}) ∏_i (1 − e^{−ω_{i,x}})⁻¹, restricted to a generic
/// direction and evaluated at the identity.
LocalizationResult localization_index(const Fan& fan, const EquivBundleAtFixedPoints& bundle,
                                      const LocalizationOptions& options = {});
LocalizationResult localization_index(const Fan& fan, std::span<const std::int64_t> divisor,
                                      const LocalizationOptions& options = {});

/// Lattice points of {u ∈ M : ⟨u, v_ρ⟩ ≥ −a_ρ for all rays}, each with
/// coefficient 1. Throws DomainError if the polytope is unbounded.
ExpSum lattice_point_character(const Fan& fan, std::span<const std::int64_t> divisor);

/// Σ_{k=0}^{r} (−1)^k C(r,k) ch(O), the charge of O/I from its Koszul
/// resolution, as an exponential sum over a lattice of dimension `dim`.
ExpSum koszul_charge(unsigned r, std::size_t dim = 0);

}  // namespace branecalc
