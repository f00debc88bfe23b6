#include "branecalc/lattice.hpp"

#include <sstream>

#include "branecalc/errors.hpp"

namespace branecalc {

mpz_class dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) {
    throw InputError("lattice vectors " + to_string(a) + " and " + to_string(b) + " have different lengths");
  }
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += mpz_class(a[i]) * mpz_class(b[i]);
  return s;
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::int64_t to_int64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw ConsistencyError(std::string(what) + " exceeds the 64-bit range", "overflow");
  return z.get_si();
}

}  // namespace branecalc
