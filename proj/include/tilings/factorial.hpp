// factorial.hpp -- the factorial number system.
//
// Every integer 0 <= v < (n+1)! has a unique expansion
//     v = sum_{k=1..n} c_k * k!            with 0 <= c_k <= k.
// digits[k-1] holds c_k.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace tilings {

struct FactorialDigits {
    std::vector<int64_t> digits;  // digits[k-1] = c_k, k = 1..n
    bool operator==(const FactorialDigits&) const = default;
};

mpz_class factorial(int64_t n);

// (n+1)! - 1, the largest value expressible with n digits
mpz_class factorial_max_value(int64_t n);

// Throws std::invalid_argument when v < 0 or v > factorial_max_value(n).
FactorialDigits factorial_encode(const mpz_class& v, int64_t n);

// Throws std::invalid_argument when some digit violates 0 <= c_k <= k.
mpz_class factorial_decode(const FactorialDigits& d);

}  // namespace tilings
