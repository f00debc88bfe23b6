#pragma once

// Characters of irreducible representations (Freudenthal) and tensor-product
// decomposition (Klimyk / Racah–Speiser), for G or for a Levi factor given as
// a Subsystem.

#include <cstdint>
#include <map>

#include "branecalc/rootsys.hpp"

namespace branecalc {

/// Weights of a representation with their multiplicities (all ≥ 1).
struct WeightMultiset {
  std::map<Weight, std::int64_t> entries;

  std::int64_t multiplicity(const Weight& w) const;
  /// Σ multiplicities, i.e. the dimension.
  mpz_class total() const;
  friend bool operator==(const WeightMultiset&, const WeightMultiset&) = default;
};

/// ν ↦ m^ν for a tensor product ⊕ m^ν V(ν); only ν with m^ν ≥ 1 are stored.
struct TensorDecomposition {
  std::map<Weight, std::int64_t> summands;

  std::int64_t multiplicity(const Weight& nu) const;
  friend bool operator==(const TensorDecomposition&, const TensorDecomposition&) = default;
};

/// Full weight diagram of the irreducible representation with highest weight
/// λ. Throws DomainError when λ is not dominant for the system.
WeightMultiset weight_multiplicities(const Subsystem& system, const Weight& lambda);

/// Highest weight −w0(α) of the dual representation.
Weight dual_irrep(const Subsystem& system, const Weight& alpha);

/// V(α) ⊗ V(β) decomposed into irreducibles.
TensorDecomposition tensor_decompose(const Subsystem& system, const Weight& alpha, const Weight& beta);

}  // namespace branecalc
