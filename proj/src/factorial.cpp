#include "tilings/factorial.hpp"

#include <stdexcept>
#include <string>

namespace tilings {

mpz_class factorial(int64_t n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

mpz_class factorial_max_value(int64_t n) {
    if (n < 1) throw std::invalid_argument("factorial_max_value: need n >= 1");
    return factorial(n + 1) - 1;
}

FactorialDigits factorial_encode(const mpz_class& v, int64_t n) {
    if (n < 1) throw std::invalid_argument("factorial_encode: need n >= 1");
    if (v < 0) throw std::invalid_argument("factorial_encode: negative value");
    if (v > factorial_max_value(n)) {
        throw std::invalid_argument("factorial_encode: value " + v.get_str() +
                                    " exceeds (n+1)!-1 for n=" + std::to_string(n));
    }
    // Peel digits from the most significant end: c_k = floor(rest / k!).
    std::vector<mpz_class> fact(static_cast<size_t>(n) + 1);
    fact[0] = 1;
    for (int64_t k = 1; k <= n; ++k) fact[static_cast<size_t>(k)] = fact[static_cast<size_t>(k - 1)] * k;
    FactorialDigits out;
    out.digits.assign(static_cast<size_t>(n), 0);
    mpz_class rest = v;
    for (int64_t k = n; k >= 1; --k) {
        mpz_class q = rest / fact[static_cast<size_t>(k)];
        rest -= q * fact[static_cast<size_t>(k)];
        out.digits[static_cast<size_t>(k - 1)] = q.get_si();
    }
    return out;
}

mpz_class factorial_decode(const FactorialDigits& d) {
    mpz_class v = 0;
    mpz_class fact = 1;
    for (size_t i = 0; i < d.digits.size(); ++i) {
        int64_t k = static_cast<int64_t>(i) + 1;
        fact *= k;
        int64_t c = d.digits[i];
        if (c < 0 || c > k) {
            throw std::invalid_argument("factorial_decode: digit c_" + std::to_string(k) +
                                        "=" + std::to_string(c) + " out of range [0," +
                                        std::to_string(k) + "]");
        }
        v += mpz_class(c) * fact;
    }
    return v;
}

}  // namespace tilings
