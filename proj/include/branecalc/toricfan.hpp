#pragma once

// Smooth complete fans, their torus fixed points and the equivariant data of
// torus-invariant divisors.
//
// Characters are stored directly as lattice vectors: an isotropy weight ω and a
// fiber weight φ appear in the localization formula as e^{ω} and e^{φ}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "branecalc/lattice.hpp"

namespace branecalc {

struct Fan {
  std::size_t dim = 0;
  std::vector<LatticeVector> rays;
  /// 0-based ray indices; every maximal cone has exactly `dim` rays.
  std::vector<std::vector<std::size_t>> max_cones;
  /// One generic point lies in exactly one maximal cone and every facet is
  /// shared by exactly two maximal cones.
  bool complete = false;
};

/// Validates a smooth fan and computes its completeness flag. Throws
/// InputError (codes: bad_cone, non_primitive_ray, not_smooth, ...).
Fan make_fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones);

/// The torus-fixed point of a maximal cone σ with the dual basis of σ's rays:
/// ⟨ω_i, v_j⟩ = δ_ij.
struct FixedPoint {
  std::size_t cone_index = 0;
  std::vector<LatticeVector> isotropy_weights;
};

std::vector<FixedPoint> fixed_points(const Fan& fan);

/// Fiber weights of a T-equivariant vector bundle at each fixed point, in
/// max_cones order. Every fixed point carries `rank()` weights.
struct EquivBundleAtFixedPoints {
  std::vector<std::vector<LatticeVector>> fiber_weights;

  std::size_t rank() const { return fiber_weights.empty() ? 0 : fiber_weights.front().size(); }
};

/// O(Σ a_ρ D_ρ) with its canonical linearization: the fiber weight m_σ at the
/// fixed point of σ solves ⟨m_σ, v_ρ⟩ = a_ρ for the rays ρ of σ. The weights
/// are the negatives of the vertices of {u : ⟨u, v_ρ⟩ ≥ −a_ρ}.
struct EquivLineBundle {
  std::vector<std::int64_t> divisor_coeffs;
  std::vector<LatticeVector> local_weights;

  EquivBundleAtFixedPoints at_fixed_points() const;
};

EquivLineBundle bundle_from_divisor(const Fan& fan, std::span<const std::int64_t> coeffs);

/// Fiberwise concatenation, V ⊕ W.
EquivBundleAtFixedPoints direct_sum(const EquivBundleAtFixedPoints& a, const EquivBundleAtFixedPoints& b);

/// Nef test for a complete fan: every local vertex −m_σ satisfies all of the
/// section-polytope inequalities.
bool is_nef(const Fan& fan, std::span<const std::int64_t> coeffs);

/// Contents of a fan file.
struct FanFile {
  Fan fan;
  std::optional<std::vector<std::int64_t>> divisor;
  std::optional<EquivBundleAtFixedPoints> bundle_fixed_weights;
};

/// JSON object with `dim`, `rays`, `max_cones`, optional `divisor` and
/// `bundle_fixed_weights`; unknown fields are rejected.
FanFile parse_fan_file(std::string_view text);
Fan parse_fan(std::string_view text);

/// Standard fans.
Fan projective_space(std::size_t n);
Fan hirzebruch(std::int64_t a);
Fan product(const Fan& a, const Fan& b);

}  // namespace branecalc
