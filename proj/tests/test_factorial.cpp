#include "doctest.h"
#include "tilings/factorial.hpp"

#include <gmpxx.h>

using namespace tilings;

namespace {

// independent of the codec: evaluate sum c_k * k! directly
mpz_class eval_digits(const std::vector<int64_t>& digits) {
    mpz_class total = 0, fact = 1;
    for (size_t k = 1; k <= digits.size(); ++k) {
        fact *= static_cast<long>(k);
        total += mpz_class(digits[k - 1]) * fact;
    }
    return total;
}

}  // namespace

TEST_CASE("factorial digit examples") {
    CHECK(factorial_encode(0, 3).digits == std::vector<int64_t>{0, 0, 0});
    CHECK(factorial_encode(5, 2).digits == std::vector<int64_t>{1, 2});
    CHECK(factorial_encode(719, 5).digits == std::vector<int64_t>{1, 2, 3, 4, 5});
    CHECK(eval_digits({1, 2}) == 5);
    CHECK(eval_digits({1, 2, 3, 4, 5}) == 719);

    CHECK(factorial_decode(FactorialDigits{{0, 0}}) == 0);
    CHECK(factorial_decode(FactorialDigits{{1, 2}}) == 5);
    CHECK(factorial_decode(FactorialDigits{{1, 0, 0}}) == 1);
}

TEST_CASE("largest representable value is (n+1)! - 1") {
    CHECK(factorial_max_value(1) == 1);
    CHECK(factorial_max_value(2) == 5);
    CHECK(factorial_max_value(5) == 719);
    for (int64_t n = 1; n <= 8; ++n) {
        mpz_class max = factorial_max_value(n);
        CHECK(factorial_decode(factorial_encode(max, n)) == max);
        CHECK_THROWS_AS(factorial_encode(max + 1, n), std::invalid_argument);
    }
}

TEST_CASE("decode validates digit bounds") {
    CHECK_THROWS_AS(factorial_decode(FactorialDigits{{2}}), std::invalid_argument);
    CHECK_THROWS_AS(factorial_decode(FactorialDigits{{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(factorial_decode(FactorialDigits{{-1, 0}}), std::invalid_argument);
}

TEST_CASE("roundtrip on random values for n up to 50") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(20260816UL);
    for (int64_t n = 2; n <= 50; ++n) {
        mpz_class bound = factorial(n + 1);
        for (int rep = 0; rep < 10000; ++rep) {
            mpz_class v = rng.get_z_range(bound);
            FactorialDigits d = factorial_encode(v, n);
            CHECK(static_cast<int64_t>(d.digits.size()) == n);
            bool bounds_ok = true;
            for (size_t k = 1; k <= d.digits.size(); ++k) {
                bounds_ok = bounds_ok && d.digits[k - 1] >= 0 &&
                            d.digits[k - 1] <= static_cast<int64_t>(k);
            }
            CHECK(bounds_ok);
            // compare against the direct evaluation, not factorial_decode
            if (eval_digits(d.digits) != v) {
                CHECK(eval_digits(d.digits) == v);
                return;
            }
        }
    }
}

TEST_CASE("every value has exactly one digit vector") {
    // exhaustive: all digit vectors for the minimal n covering v <= 1000
    for (int64_t n = 1; n <= 6; ++n) {
        std::vector<int64_t> counts(static_cast<size_t>(mpz_get_ui(factorial(n + 1).get_mpz_t())),
                                    0);
        std::vector<int64_t> digits(static_cast<size_t>(n), 0);
        while (true) {
            mpz_class v = eval_digits(digits);
            ++counts[mpz_get_ui(v.get_mpz_t())];
            size_t k = 0;
            while (k < digits.size()) {
                if (digits[k] < static_cast<int64_t>(k) + 1) {
                    ++digits[k];
                    break;
                }
                digits[k] = 0;
                ++k;
            }
            if (k == digits.size()) break;
        }
        for (int64_t c : counts) CHECK(c == 1);
    }
}

TEST_CASE("digit vectors order values reverse-lexicographically") {
    // n = 6 covers all v <= 720
    std::vector<FactorialDigits> ds;
    for (int64_t v = 0; v <= 720; ++v) ds.push_back(factorial_encode(v, 6));
    auto revlex_less = [](const FactorialDigits& a, const FactorialDigits& b) {
        for (size_t k = a.digits.size(); k-- > 0;) {
            if (a.digits[k] != b.digits[k]) return a.digits[k] < b.digits[k];
        }
        return false;
    };
    for (size_t v = 0; v + 1 <= 720; ++v) {
        CHECK(revlex_less(ds[v], ds[v + 1]));
    }
}
