#include "branecalc/charseries.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "branecalc/errors.hpp"

namespace branecalc {

// ---------------------------------------------------------------- ExpSum

ExpSum ExpSum::monomial(const LatticeVector& m, const mpz_class& coeff) {
  ExpSum s;
  s.add_term(m, coeff);
  return s;
}

void ExpSum::add_term(const LatticeVector& m, const mpz_class& coeff) {
  if (coeff == 0) return;
  if (!terms_.empty() && terms_.begin()->first.size() != m.size()) {
    throw InputError("exponent " + to_string(m) + " has the wrong dimension");
  }
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

mpz_class ExpSum::total() const {
  mpz_class t = 0;
  for (const auto& [m, c] : terms_) t += c;
  return t;
}

ExpSum& ExpSum::operator+=(const ExpSum& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

ExpSum& ExpSum::operator-=(const ExpSum& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

ExpSum& ExpSum::operator*=(const mpz_class& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= k;
  return *this;
}

ExpSum operator*(const ExpSum& a, const ExpSum& b) {
  ExpSum out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      if (ma.size() != mb.size()) throw InputError("exponential sums of different dimensions");
      LatticeVector m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

std::string to_string(const ExpSum& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const mpz_class a = abs(c);
    if (a != 1) os << a.get_str() << '*';
    os << "e^" << to_string(m);
  }
  return os.str();
}

// ------------------------------------------------------------ Polynomial

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const mpz_class& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(std::size_t degree, const mpz_class& c) {
  std::vector<mpz_class> v(degree + 1, 0);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class Polynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

mpz_class Polynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

std::size_t Polynomial::order_at_one() const {
  if (is_zero()) return 0;
  std::size_t order = 0;
  std::vector<mpz_class> c = coeffs_;
  for (;;) {
    mpz_class value = 0;
    for (const auto& x : c) value += x;
    if (value != 0 || c.size() <= 1) return order;
    // synthetic division by (q − 1)
    std::vector<mpz_class> quotient(c.size() - 1);
    mpz_class carry = 0;
    for (std::size_t i = c.size() - 1; i >= 1; --i) {
      carry += c[i];
      quotient[i - 1] = carry;
    }
    c = std::move(quotient);
    ++order;
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const mpz_class& k) {
  for (auto& c : coeffs_) c *= k;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw ConsistencyError("polynomial division is not exact");
  std::vector<mpz_class> rem = a.coeffs_;
  std::vector<mpz_class> quot(a.coeffs_.size() - b.coeffs_.size() + 1, 0);
  const std::size_t nb = b.coeffs_.size();
  for (std::size_t d = quot.size(); d-- > 0;) {
    const mpz_class& top = rem[d + nb - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t())) {
      throw ConsistencyError("polynomial division is not exact over the integers");
    }
    const mpz_class t = top / b.leading();
    quot[d] = t;
    for (std::size_t j = 0; j < nb; ++j) rem[d + j] -= t * b.coeffs_[j];
  }
  if (std::any_of(rem.begin(), rem.end(), [](const mpz_class& x) { return x != 0; })) {
    throw ConsistencyError("polynomial division is not exact");
  }
  return Polynomial(std::move(quot));
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InputError("pseudo-remainder by the zero polynomial");
  Polynomial r = a;
  const mpz_class lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    const mpz_class lr = r.leading();
    r *= lb;
    r -= Polynomial::monomial(shift, lr) * b;
  }
  return r;
}

namespace {

Polynomial primitive_part(Polynomial p) {
  const mpz_class c = p.content();
  if (c > 1) {
    std::vector<mpz_class> v = p.coeffs();
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    p = Polynomial(std::move(v));
  }
  return p;
}

Polynomial with_positive_lead(Polynomial p) {
  if (!p.is_zero() && p.leading() < 0) p *= -1;
  return p;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return with_positive_lead(b);
  if (b.is_zero()) return with_positive_lead(a);
  mpz_class c;
  const mpz_class ca = a.content();
  const mpz_class cb = b.content();
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Polynomial x = primitive_part(a);
  Polynomial y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? Polynomial() : primitive_part(std::move(r));
  }
  Polynomial g = with_positive_lead(primitive_part(std::move(x)));
  g *= c;
  return g;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const mpz_class& c = p.coeffs()[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const mpz_class a = abs(c);
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << 'q';
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

// --------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  reduce();
}

RatFunc RatFunc::constant(const mpz_class& c) { return RatFunc(Polynomial::constant(c), Polynomial::constant(1)); }

RatFunc RatFunc::monomial(std::int64_t exponent) {
  const auto e = static_cast<std::size_t>(exponent < 0 ? -exponent : exponent);
  return exponent >= 0 ? RatFunc(Polynomial::monomial(e), Polynomial::constant(1))
                       : RatFunc(Polynomial::constant(1), Polynomial::monomial(e));
}

void RatFunc::reduce() {
  if (den_.is_zero()) throw InputError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = gcd(num_, den_);
  if (g.degree() > 0 || g.leading() != 1) {
    num_ = exact_quotient(num_, g);
    den_ = exact_quotient(den_, g);
  }
  if (den_.leading() < 0) {
    num_ *= -1;
    den_ *= -1;
  }
}

mpq_class RatFunc::evaluate(const mpq_class& x) const {
  const mpq_class d = den_.evaluate(x);
  if (d == 0) throw PoleError("rational function " + to_string(*this) + " has a pole at q = " + x.get_str());
  mpq_class v = num_.evaluate(x) / d;
  v.canonicalize();
  return v;
}

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  if (other.is_zero()) return *this;
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    // Over lcm(den, other.den) rather than the product: keeps degrees low when
    // the denominators share factors, as localization terms do.
    const Polynomial g = gcd(den_, other.den_);
    const Polynomial mine = exact_quotient(den_, g);
    const Polynomial theirs = exact_quotient(other.den_, g);
    num_ = num_ * theirs + other.num_ * mine;
    den_ = den_ * theirs;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& other) {
  RatFunc neg = other;
  neg.num_ *= -1;
  return *this += neg;
}

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  num_ = num_ * other.num_;
  den_ = den_ * other.den_;
  reduce();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& other) {
  if (other.is_zero()) throw InputError("division by the zero rational function");
  num_ = num_ * other.den_;
  den_ = den_ * other.num_;
  reduce();
  return *this;
}

std::string to_string(const RatFunc& f) {
  if (f.denominator() == Polynomial::constant(1)) return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

// ------------------------------------------------ one-parameter restriction

bool is_generic(const GenericDirection& dir, std::span<const LatticeVector> weights) {
  return std::none_of(weights.begin(), weights.end(), [&](const LatticeVector& w) { return dot(w, dir.v) == 0; });
}

GenericDirection choose_generic_direction(std::span<const LatticeVector> weights, std::size_t dim,
                                          int escalation, int max_tries) {
  std::int64_t largest = 0;
  for (const auto& w : weights) {
    for (std::int64_t x : w) largest = std::max<std::int64_t>(largest, x < 0 ? -x : x);
  }
  const std::int64_t base = 1 + escalation + largest;
  for (int t = 0; t < max_tries; ++t) {
    GenericDirection dir;
    mpz_class power = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      dir.v.push_back(to_int64(power, "generic direction entry"));
      power *= base + t;
    }
    if (is_generic(dir, weights)) return dir;
  }
  throw GenericityError("no generic direction found after " + std::to_string(max_tries) + " attempts");
}

std::int64_t restrict_exponent(const LatticeVector& m, const GenericDirection& dir) {
  return to_int64(dot(m, dir.v), "restricted exponent");
}

RatFunc restrict_to_direction(const LatticeVector& m, const GenericDirection& dir) {
  return RatFunc::monomial(restrict_exponent(m, dir));
}

RatFunc restrict_to_direction(const ExpSum& s, const GenericDirection& dir) {
  if (s.is_zero()) return {};
  std::vector<std::pair<std::int64_t, mpz_class>> exps;
  std::int64_t low = 0;
  for (const auto& [m, c] : s.terms()) {
    exps.emplace_back(restrict_exponent(m, dir), c);
    low = std::min(low, exps.back().first);
  }
  Polynomial num;
  for (const auto& [e, c] : exps) num += Polynomial::monomial(static_cast<std::size_t>(e - low), c);
  return RatFunc(std::move(num), Polynomial::monomial(static_cast<std::size_t>(-low)));
}

RatFunc localization_term(std::span<const LatticeVector> fiber_weights,
                          std::span<const LatticeVector> isotropy, const GenericDirection& dir) {
  // (1 − q^{−f}) = (q^f − 1)/q^f for f > 0, and 1 − q^{|f|} for f < 0.
  Polynomial den = Polynomial::constant(1);
  std::int64_t shift = 0;
  for (const auto& omega : isotropy) {
    const std::int64_t f = restrict_exponent(omega, dir);
    if (f == 0) {
      throw GenericityError("direction " + to_string(dir.v) + " is orthogonal to isotropy weight " + to_string(omega));
    }
    const auto a = static_cast<std::size_t>(f < 0 ? -f : f);
    if (f > 0) {
      den = den * (Polynomial::monomial(a) - Polynomial::constant(1));
      shift += f;
    } else {
      den = den * (Polynomial::constant(1) - Polynomial::monomial(a));
    }
  }
  if (fiber_weights.empty()) return {};
  std::vector<std::int64_t> exps;
  for (const auto& m : fiber_weights) exps.push_back(restrict_exponent(m, dir));
  const std::int64_t low = *std::min_element(exps.begin(), exps.end());
  Polynomial num;
  for (std::int64_t e : exps) num += Polynomial::monomial(static_cast<std::size_t>(e - low));
  shift += low;
  if (shift >= 0) {
    num = num * Polynomial::monomial(static_cast<std::size_t>(shift));
  } else {
    den = den * Polynomial::monomial(static_cast<std::size_t>(-shift));
  }
  return RatFunc(std::move(num), std::move(den));
}

mpq_class sum_and_evaluate_at_one(std::span<const RatFunc> terms) {
  RatFunc total;
  for (const auto& t : terms) total += t;
  const std::size_t order = total.denominator().order_at_one();
  if (order > 0) {
    throw PoleError("localization sum " + to_string(total) + " keeps an uncancelled factor (q - 1)^" +
                    std::to_string(order) + " in its denominator");
  }
  return total.evaluate(1);
}

}  // namespace branecalc
