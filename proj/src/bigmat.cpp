#include "tilings/bigmat.hpp"

#include <stdexcept>

namespace tilings {

BigMatrix BigMatrix::identity(int32_t d) {
    BigMatrix m(d);
    for (int32_t i = 0; i < d; ++i) m.at(i, i) = 1;
    return m;
}

BigMatrix BigMatrix::mul(const BigMatrix& rhs) const {
    if (dim != rhs.dim) throw std::invalid_argument("BigMatrix::mul: dimension mismatch");
    BigMatrix out(dim);
    mpz_class tmp;
    for (int32_t i = 0; i < dim; ++i) {
        for (int32_t k = 0; k < dim; ++k) {
            const mpz_class& aik = at(i, k);
            if (aik == 0) continue;
            for (int32_t j = 0; j < dim; ++j) {
                tmp = aik * rhs.at(k, j);
                out.at(i, j) += tmp;
            }
        }
    }
    return out;
}

BigMatrix BigMatrix::pow(uint64_t e) const {
    BigMatrix result = identity(dim);
    BigMatrix base = *this;
    while (e > 0) {
        if (e & 1) result = result.mul(base);
        base = base.mul(base);
        e >>= 1;
    }
    return result;
}

mpz_class BigMatrix::trace() const {
    mpz_class t = 0;
    for (int32_t i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

mpz_class BigMatrix::max_entry() const {
    mpz_class best = 0;
    for (const mpz_class& v : a) {
        if (v > best) best = v;
    }
    return best;
}

bool BigMatrix::nonnegative() const {
    for (const mpz_class& v : a) {
        if (v < 0) return false;
    }
    return true;
}

}  // namespace tilings
