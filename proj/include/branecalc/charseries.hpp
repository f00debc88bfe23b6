#pragma once

// Exact carriers for equivariant characters: formal sums of lattice
// exponentials, integer polynomials and reduced rational functions in one
// variable q, and the restriction of characters to a one-parameter subgroup.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "branecalc/lattice.hpp"

namespace branecalc {

/// Σ c_m e^m over lattice vectors m, no zero coefficients stored.
class ExpSum {
 public:
  ExpSum() = default;
  static ExpSum monomial(const LatticeVector& m, const mpz_class& coeff = 1);

  void add_term(const LatticeVector& m, const mpz_class& coeff);
  const std::map<LatticeVector, mpz_class>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Sum of the coefficients (the value at the identity of the torus).
  mpz_class total() const;

  ExpSum& operator+=(const ExpSum& other);
  ExpSum& operator-=(const ExpSum& other);
  ExpSum& operator*=(const mpz_class& k);
  friend ExpSum operator+(ExpSum a, const ExpSum& b) { return a += b; }
  friend ExpSum operator-(ExpSum a, const ExpSum& b) { return a -= b; }
  friend ExpSum operator*(const ExpSum& a, const ExpSum& b);
  friend bool operator==(const ExpSum&, const ExpSum&) = default;

 private:
  std::map<LatticeVector, mpz_class> terms_;
};

std::string to_string(const ExpSum& s);

/// Dense polynomial in q with integer coefficients; coefficient i is that of q^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpz_class> coeffs);
  static Polynomial constant(const mpz_class& c);
  static Polynomial monomial(std::size_t degree, const mpz_class& c = 1);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const mpz_class& leading() const { return coeffs_.back(); }
  mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  mpq_class evaluate(const mpq_class& x) const;
  /// gcd of the coefficients, 0 for the zero polynomial.
  mpz_class content() const;
  /// Multiplicity of q = 1 as a root.
  std::size_t order_at_one() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const mpz_class& k);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= -1; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// a / b when b divides a in ℤ[q]; throws ConsistencyError otherwise.
  friend Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);
  /// Pseudo-remainder of a by b (b nonzero).
  friend Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b);
  /// Greatest common divisor in ℤ[q], with positive leading coefficient.
  friend Polynomial gcd(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

std::string to_string(const Polynomial& p);

/// numerator / denominator in lowest terms: no common polynomial factor, no
/// common integer content, denominator with positive leading coefficient.
/// Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(Polynomial::constant(1)) {}
  RatFunc(Polynomial numerator, Polynomial denominator);
  static RatFunc constant(const mpz_class& c);
  /// q^e for any integer e.
  static RatFunc monomial(std::int64_t exponent);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// Exact value at x; throws PoleError where the denominator vanishes.
  mpq_class evaluate(const mpq_class& x) const;

  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);
  RatFunc& operator/=(const RatFunc& other);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc&, const RatFunc&) = default;

 private:
  void reduce();
  Polynomial num_;
  Polynomial den_;
};

std::string to_string(const RatFunc& f);

/// A one-parameter subgroup ξ = t·v of the torus, v ∈ N.
struct GenericDirection {
  LatticeVector v;
  friend bool operator==(const GenericDirection&, const GenericDirection&) = default;
};

/// ⟨m, ω⟩ ≠ 0 for every weight given.
bool is_generic(const GenericDirection& dir, std::span<const LatticeVector> weights);

/// v = (1, K, K², …) with K = 1 + escalation + max |entry| over `weights`,
/// raising K until v is generic. Throws GenericityError after `max_tries`.
GenericDirection choose_generic_direction(std::span<const LatticeVector> weights, std::size_t dim,
                                          int escalation = 0, int max_tries = 64);

/// Exponent ⟨m, v⟩ of the restricted character e^m ↦ q^{⟨m,v⟩}.
std::int64_t restrict_exponent(const LatticeVector& m, const GenericDirection& dir);
/// q^{⟨m,v⟩} as a rational function.
RatFunc restrict_to_direction(const LatticeVector& m, const GenericDirection& dir);
/// Σ c_m q^{⟨m,v⟩}.
RatFunc restrict_to_direction(const ExpSum& s, const GenericDirection& dir);

/// (Σ_j q^{⟨m_j,v⟩}) / ∏_i (1 − q^{−⟨ω_i,v⟩}). Throws GenericityError when some
/// ⟨ω_i, v⟩ = 0.
RatFunc localization_term(std::span<const LatticeVector> fiber_weights,
                          std::span<const LatticeVector> isotropy, const GenericDirection& dir);

/// Adds the terms left to right and evaluates the reduced sum at q = 1.
/// Throws PoleError naming the uncancelled (q − 1)^k factor.
mpq_class sum_and_evaluate_at_one(std::span<const RatFunc> terms);

}  // namespace branecalc
