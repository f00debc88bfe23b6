#pragma once

// Simple root systems, Weyl-group reflections and the Weyl dimension formula.
//
// Weights are integer vectors in fundamental-weight coordinates, so a weight
// is dominant exactly when all of its coordinates are non-negative and the
// simple reflection s_i acts by  s_i(λ) = λ − λ_i·α_i.  Simple-root indices,
// Levi indices and Weyl-word letters are 0-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace branecalc {

/// An integer vector in fundamental-weight coordinates.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  Weight(std::initializer_list<std::int64_t> coords) : coords_(coords) {}
  static Weight zero(std::size_t rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }

  std::size_t size() const noexcept { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;

  Weight& operator+=(const Weight& other);
  Weight& operator-=(const Weight& other);
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator-(Weight a);
  friend Weight operator*(std::int64_t k, Weight a);

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// "(1,-2,0)"
std::string to_string(const Weight& w);

enum class Family { A, B, C, D, E, F, G };

/// A product s_{letters[0]} s_{letters[1]} ... of simple reflections. Acting on
/// a weight, the rightmost letter is applied first.
struct WeylWord {
  std::vector<int> letters;
  std::size_t length() const noexcept { return letters.size(); }
  friend bool operator==(const WeylWord&, const WeylWord&) = default;
};

WeylWord inverse(const WeylWord& w);

/// Simple-root indices spanning the Levi factor L of a parabolic Q ⊇ B.
/// The empty set is the Borel subgroup.
struct ParabolicSubset {
  std::vector<int> levi;  // sorted, unique, 0-based

  static ParabolicSubset borel() { return {}; }
  bool contains(int i) const;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using RationalMatrix = std::vector<std::vector<mpq_class>>;

class RootSystem {
 public:
  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  /// "A2", "G2", "E8", ...
  std::string name() const;

  /// C[i][j] = 2(α_i,α_j)/(α_j,α_j); row i is α_i in fundamental coordinates.
  const IntMatrix& cartan_matrix() const noexcept { return cartan_; }
  const std::vector<Weight>& simple_roots() const noexcept { return simple_roots_; }
  /// Positive roots in fundamental-weight coordinates.
  const std::vector<Weight>& positive_roots() const noexcept { return positive_roots_; }
  /// The same roots, as non-negative integer combinations of simple roots.
  const std::vector<Weight>& positive_roots_in_simple_basis() const noexcept {
    return positive_roots_simple_;
  }
  /// (ω_i, ω_j) with the normalization (α,α) = 2 for long roots.
  const RationalMatrix& pairing_matrix() const noexcept { return pairing_; }

  /// 6·(λ, α) for the positive root with the given index. Always an integer.
  std::int64_t scaled_pairing_with_root(const Weight& lambda, std::size_t root) const;
  /// 6·(λ, α_i) = λ_i · 3(α_i, α_i).
  std::int64_t scaled_pairing_with_simple_root(const Weight& lambda, int i) const {
    return lambda[i] * half_norm6_[i];
  }

  /// s_i(λ)
  Weight reflect(int i, Weight lambda) const;

  /// Throws InputError unless λ has `rank()` coordinates.
  void check_weight(const Weight& lambda) const;

 private:
  friend RootSystem build_root_system(Family family, int rank);

  Family family_ = Family::A;
  int rank_ = 0;
  IntMatrix gram6_;                       // 6·(α_i, α_j)
  std::vector<std::int64_t> half_norm6_;  // 3·(α_i, α_i)
  IntMatrix cartan_;
  std::vector<Weight> simple_roots_;
  std::vector<Weight> positive_roots_;
  std::vector<Weight> positive_roots_simple_;
  RationalMatrix pairing_;
};

/// Classical number of positive roots for a valid (family, rank).
std::size_t expected_positive_root_count(Family family, int rank);

/// Throws InputError for an invalid pair. D3 is accepted and built as A3.
RootSystem build_root_system(Family family, int rank);

/// Parses "A", "b", "E6", "G2", ...  A rank embedded in the name must agree
/// with `rank`.
Family parse_family(std::string_view type, int rank);

/// A Weyl-chamber view of either the full system or the Levi subsystem of a
/// parabolic: its simple reflections are those at the Levi indices and its
/// positive roots are the positive roots supported on them. Weights keep
/// full-rank coordinates; the off-Levi part rides along as a central
/// character. Non-owning: the RootSystem must outlive the view.
class Subsystem {
 public:
  explicit Subsystem(const RootSystem& rs);
  Subsystem(const RootSystem& rs, const ParabolicSubset& levi);

  const RootSystem& ambient() const noexcept { return *rs_; }
  const std::vector<int>& simple_indices() const noexcept { return simple_; }
  /// Indices into ambient().positive_roots().
  const std::vector<std::size_t>& positive_root_indices() const noexcept { return roots_; }
  bool is_full() const noexcept { return static_cast<int>(simple_.size()) == rs_->rank(); }

  bool is_dominant(const Weight& lambda) const;
  bool is_regular(const Weight& lambda) const;
  std::size_t count_negative_roots(const Weight& lambda) const;

  struct DominantForm {
    WeylWord word;   // word(λ) == weight
    Weight weight;
  };
  DominantForm make_dominant(const Weight& lambda) const;

  /// ∏ (λ+ρ, α)/(ρ, α) over the positive roots of this subsystem.
  mpz_class weyl_dimension(const Weight& lambda) const;

 private:
  const RootSystem* rs_;
  std::vector<int> simple_;
  std::vector<std::size_t> roots_;
};

/// Half the sum of the positive roots: (1, …, 1).
Weight rho(const RootSystem& rs);

mpq_class inner_product(const RootSystem& rs, const Weight& lambda, const Weight& mu);

bool is_regular(const RootSystem& rs, const Weight& lambda);

Subsystem::DominantForm make_dominant(const RootSystem& rs, const Weight& lambda);

/// #{α ∈ Δ⁺ : (λ, α) < 0}
std::size_t count_negative_roots(const RootSystem& rs, const Weight& lambda);

/// Dimension of the irreducible representation with highest weight λ, of G or
/// of the Levi factor when one is given. Throws DomainError for non-dominant λ.
mpz_class weyl_dimension(const RootSystem& rs, const Weight& lambda,
                         const std::optional<ParabolicSubset>& levi = std::nullopt);

/// w(λ), applying the rightmost letter first.
Weight apply(const RootSystem& rs, const WeylWord& w, Weight lambda);

}  // namespace branecalc
