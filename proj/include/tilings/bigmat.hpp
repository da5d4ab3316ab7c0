// bigmat.hpp -- dense square matrices over arbitrary-precision integers.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace tilings {

struct BigMatrix {
    int32_t dim = 0;
    std::vector<mpz_class> a;  // row-major, dim*dim entries

    BigMatrix() = default;
    explicit BigMatrix(int32_t d) : dim(d), a(static_cast<size_t>(d) * static_cast<size_t>(d), 0) {}

    static BigMatrix identity(int32_t d);

    mpz_class& at(int32_t i, int32_t j) { return a[static_cast<size_t>(i) * dim + j]; }
    const mpz_class& at(int32_t i, int32_t j) const { return a[static_cast<size_t>(i) * dim + j]; }

    BigMatrix mul(const BigMatrix& rhs) const;
    BigMatrix pow(uint64_t e) const;
    mpz_class trace() const;
    mpz_class max_entry() const;
    bool nonnegative() const;

    bool operator==(const BigMatrix&) const = default;
};

}  // namespace tilings
