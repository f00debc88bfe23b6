#include "branecalc/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "branecalc/errors.hpp"

namespace branecalc {

bool Weight::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

Weight& Weight::operator+=(const Weight& other) {
  if (other.size() != size()) throw InputError("weight length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& other) {
  if (other.size() != size()) throw InputError("weight length mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Weight operator-(Weight a) {
  for (auto& c : a.coords_) c = -c;
  return a;
}

Weight operator*(std::int64_t k, Weight a) {
  for (auto& c : a.coords_) c *= k;
  return a;
}

std::string to_string(const Weight& w) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ',';
    os << w[i];
  }
  os << ')';
  return os.str();
}

WeylWord inverse(const WeylWord& w) {
  return WeylWord{std::vector<int>(w.letters.rbegin(), w.letters.rend())};
}

bool ParabolicSubset::contains(int i) const {
  return std::binary_search(levi.begin(), levi.end(), i);
}

namespace {

bool valid_pair(Family family, int rank) {
  switch (family) {
    case Family::A: return rank >= 1;
    case Family::B: return rank >= 2;
    case Family::C: return rank >= 2;
    case Family::D: return rank >= 3;
    case Family::E: return rank >= 6 && rank <= 8;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
  }
  return false;
}

char family_letter(Family family) {
  constexpr std::string_view letters = "ABCDEFG";
  return letters[static_cast<int>(family)];
}

// 6·(α_i, α_j) in Bourbaki numbering, long roots of squared length 2.
IntMatrix scaled_gram(Family family, int n) {
  IntMatrix g(n, std::vector<std::int64_t>(n, 0));
  auto link = [&](int i, int j, std::int64_t v) { g[i][j] = g[j][i] = v; };
  for (int i = 0; i < n; ++i) g[i][i] = 12;
  switch (family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -6);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -6);
      g[n - 1][n - 1] = 6;
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) {
        g[i][i] = 6;
        link(i, i + 1, i + 2 < n ? -3 : -6);
      }
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -6);
      link(n - 3, n - 1, -6);
      break;
    case Family::E:
      link(0, 2, -6);
      link(1, 3, -6);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -6);
      break;
    case Family::F:
      link(0, 1, -6);
      link(1, 2, -6);
      link(2, 3, -3);
      g[2][2] = g[3][3] = 6;
      break;
    case Family::G:
      g[0][0] = 4;
      link(0, 1, -6);
      break;
  }
  return g;
}

RationalMatrix invert(const IntMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix a(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw ConsistencyError("singular Cartan matrix");
    std::swap(a[pivot], a[col]);
    const mpq_class p = a[col][col];
    for (auto& x : a[col]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  RationalMatrix inv(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

}  // namespace

std::string RootSystem::name() const {
  return std::string(1, family_letter(family_)) + std::to_string(rank_);
}

void RootSystem::check_weight(const Weight& lambda) const {
  if (static_cast<int>(lambda.size()) != rank_) {
    throw InputError("weight " + to_string(lambda) + " has " + std::to_string(lambda.size()) +
                     " coordinates, expected " + std::to_string(rank_) + " for " + name());
  }
}

std::int64_t RootSystem::scaled_pairing_with_root(const Weight& lambda, std::size_t root) const {
  const Weight& c = positive_roots_simple_[root];
  std::int64_t s = 0;
  for (int k = 0; k < rank_; ++k) s += c[k] * lambda[k] * half_norm6_[k];
  return s;
}

Weight RootSystem::reflect(int i, Weight lambda) const {
  const std::int64_t li = lambda[i];
  if (li == 0) return lambda;
  const auto& alpha = cartan_[i];
  for (int j = 0; j < rank_; ++j) lambda[j] -= li * alpha[j];
  return lambda;
}

std::size_t expected_positive_root_count(Family family, int rank) {
  const std::size_t n = static_cast<std::size_t>(rank);
  switch (family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

RootSystem build_root_system(Family family, int rank) {
  if (!valid_pair(family, rank)) {
    throw InputError(std::string("no simple root system of type ") + family_letter(family) +
                     " and rank " + std::to_string(rank));
  }
  if (family == Family::D && rank == 3) family = Family::A;

  RootSystem rs;
  rs.family_ = family;
  rs.rank_ = rank;
  rs.gram6_ = scaled_gram(family, rank);
  rs.half_norm6_.resize(rank);
  rs.cartan_.assign(rank, std::vector<std::int64_t>(rank));
  for (int i = 0; i < rank; ++i) {
    rs.half_norm6_[i] = rs.gram6_[i][i] / 2;
    for (int j = 0; j < rank; ++j) rs.cartan_[i][j] = 2 * rs.gram6_[i][j] / rs.gram6_[j][j];
  }
  for (int i = 0; i < rank; ++i) rs.simple_roots_.emplace_back(rs.cartan_[i]);

  // Reflection closure of the simple roots, in the simple-root basis, keeping
  // only positive coefficient vectors.
  const std::size_t expected = expected_positive_root_count(family, rank);
  std::set<Weight> seen;
  std::deque<Weight> queue;
  for (int i = 0; i < rank; ++i) {
    Weight e = Weight::zero(rank);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
    rs.positive_roots_simple_.push_back(e);
  }
  while (!queue.empty()) {
    const Weight beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < rank; ++i) {
      // <β, α_i^∨> = Σ_k c_k C[k][i]
      std::int64_t coroot = 0;
      for (int k = 0; k < rank; ++k) coroot += beta[k] * rs.cartan_[k][i];
      if (coroot >= 0) continue;
      Weight next = beta;
      next[i] -= coroot;
      if (seen.insert(next).second) {
        if (seen.size() > expected) {
          throw ConsistencyError("positive-root closure exceeded " + std::to_string(expected) +
                                 " roots for " + rs.name());
        }
        queue.push_back(next);
        rs.positive_roots_simple_.push_back(next);
      }
    }
  }
  if (rs.positive_roots_simple_.size() != expected) {
    throw ConsistencyError("positive-root closure produced " +
                           std::to_string(rs.positive_roots_simple_.size()) + " roots for " +
                           rs.name() + ", expected " + std::to_string(expected));
  }
  for (const Weight& c : rs.positive_roots_simple_) {
    Weight w = Weight::zero(rank);
    for (int k = 0; k < rank; ++k)
      for (int j = 0; j < rank; ++j) w[j] += c[k] * rs.cartan_[k][j];
    rs.positive_roots_.push_back(std::move(w));
  }

  // (ω_i, ω_j) = (C⁻¹)_ij · (α_j, α_j)/2
  const RationalMatrix cinv = invert(rs.cartan_);
  rs.pairing_.assign(rank, std::vector<mpq_class>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs.pairing_[i][j] = cinv[i][j] * mpq_class(rs.gram6_[j][j], 12);
  for (auto& row : rs.pairing_)
    for (auto& x : row) x.canonicalize();
  return rs;
}

Family parse_family(std::string_view type, int rank) {
  if (type.empty()) throw InputError("empty root-system type");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
  if (letter < 'A' || letter > 'G') throw InputError("unknown root-system type '" + std::string(type) + "'");
  const auto family = static_cast<Family>(letter - 'A');
  if (type.size() > 1) {
    int embedded = 0;
    const auto tail = type.substr(1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), embedded);
    if (ec != std::errc() || ptr != tail.data() + tail.size()) {
      throw InputError("unknown root-system type '" + std::string(type) + "'");
    }
    if (embedded != rank) {
      throw InputError("type " + std::string(type) + " does not have rank " + std::to_string(rank));
    }
  }
  return family;
}

Subsystem::Subsystem(const RootSystem& rs) : rs_(&rs) {
  for (int i = 0; i < rs.rank(); ++i) simple_.push_back(i);
  for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) roots_.push_back(r);
}

Subsystem::Subsystem(const RootSystem& rs, const ParabolicSubset& levi) : rs_(&rs) {
  for (int i : levi.levi) {
    if (i < 0 || i >= rs.rank()) {
      throw InputError("Levi index " + std::to_string(i + 1) + " outside [1.." +
                       std::to_string(rs.rank()) + "]");
    }
  }
  simple_ = levi.levi;
  std::sort(simple_.begin(), simple_.end());
  simple_.erase(std::unique(simple_.begin(), simple_.end()), simple_.end());
  const auto& roots = rs.positive_roots_in_simple_basis();
  for (std::size_t r = 0; r < roots.size(); ++r) {
    bool inside = true;
    for (int k = 0; k < rs.rank() && inside; ++k)
      if (roots[r][k] != 0 && !std::binary_search(simple_.begin(), simple_.end(), k)) inside = false;
    if (inside) roots_.push_back(r);
  }
}

bool Subsystem::is_dominant(const Weight& lambda) const {
  rs_->check_weight(lambda);
  return std::all_of(simple_.begin(), simple_.end(), [&](int i) { return lambda[i] >= 0; });
}

bool Subsystem::is_regular(const Weight& lambda) const {
  rs_->check_weight(lambda);
  return std::none_of(roots_.begin(), roots_.end(),
                      [&](std::size_t r) { return rs_->scaled_pairing_with_root(lambda, r) == 0; });
}

std::size_t Subsystem::count_negative_roots(const Weight& lambda) const {
  rs_->check_weight(lambda);
  return static_cast<std::size_t>(std::count_if(roots_.begin(), roots_.end(), [&](std::size_t r) {
    return rs_->scaled_pairing_with_root(lambda, r) < 0;
  }));
}

Subsystem::DominantForm Subsystem::make_dominant(const Weight& lambda) const {
  rs_->check_weight(lambda);
  DominantForm out{{}, lambda};
  // Each step removes exactly one root from {α > 0 : (λ, α) < 0}.
  for (std::size_t step = 0; step <= roots_.size(); ++step) {
    auto neg = std::find_if(simple_.begin(), simple_.end(), [&](int i) { return out.weight[i] < 0; });
    if (neg == simple_.end()) {
      std::reverse(out.word.letters.begin(), out.word.letters.end());
      return out;
    }
    out.weight = rs_->reflect(*neg, std::move(out.weight));
    out.word.letters.push_back(*neg);
  }
  throw ConsistencyError("dominance loop did not terminate for " + to_string(lambda));
}

mpz_class Subsystem::weyl_dimension(const Weight& lambda) const {
  if (!is_dominant(lambda)) {
    throw DomainError("weight " + to_string(lambda) + " is not dominant");
  }
  const Weight shifted = lambda + rho(*rs_);
  const Weight r = rho(*rs_);
  mpz_class num = 1;
  mpz_class den = 1;
  for (std::size_t idx : roots_) {
    num *= rs_->scaled_pairing_with_root(shifted, idx);
    den *= rs_->scaled_pairing_with_root(r, idx);
  }
  if (num % den != 0) throw ConsistencyError("Weyl dimension of " + to_string(lambda) + " is not integral");
  return num / den;
}

Weight rho(const RootSystem& rs) {
  return Weight(std::vector<std::int64_t>(rs.rank(), 1));
}

mpq_class inner_product(const RootSystem& rs, const Weight& lambda, const Weight& mu) {
  rs.check_weight(lambda);
  rs.check_weight(mu);
  mpq_class s = 0;
  const auto& p = rs.pairing_matrix();
  for (int i = 0; i < rs.rank(); ++i) {
    if (lambda[i] == 0) continue;
    for (int j = 0; j < rs.rank(); ++j) {
      if (mu[j] != 0) s += p[i][j] * mpq_class(mpz_class(lambda[i]) * mpz_class(mu[j]));
    }
  }
  return s;
}

bool is_regular(const RootSystem& rs, const Weight& lambda) {
  return Subsystem(rs).is_regular(lambda);
}

Subsystem::DominantForm make_dominant(const RootSystem& rs, const Weight& lambda) {
  return Subsystem(rs).make_dominant(lambda);
}

std::size_t count_negative_roots(const RootSystem& rs, const Weight& lambda) {
  return Subsystem(rs).count_negative_roots(lambda);
}

mpz_class weyl_dimension(const RootSystem& rs, const Weight& lambda,
                         const std::optional<ParabolicSubset>& levi) {
  return levi ? Subsystem(rs, *levi).weyl_dimension(lambda) : Subsystem(rs).weyl_dimension(lambda);
}

Weight apply(const RootSystem& rs, const WeylWord& w, Weight lambda) {
  rs.check_weight(lambda);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (*it < 0 || *it >= rs.rank()) throw InputError("Weyl word letter out of range");
    lambda = rs.reflect(*it, std::move(lambda));
  }
  return lambda;
}

}  // namespace branecalc
