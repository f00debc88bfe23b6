#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace branecalc {

/// An integer vector in N = ℤⁿ or in its dual M.
using LatticeVector = std::vector<std::int64_t>;

/// ⟨a, b⟩, exact. Throws InputError on a length mismatch.
mpz_class dot(const LatticeVector& a, const LatticeVector& b);

/// "(1,-1)"
std::string to_string(const LatticeVector& v);

/// mpz → int64, throwing ConsistencyError if the value does not fit.
std::int64_t to_int64(const mpz_class& z, const char* what);

}  // namespace branecalc
