#ifndef CATMOD_ORACLE_HPP
#define CATMOD_ORACLE_HPP

#include <vector>

#include "catmod/field.hpp"

namespace catmod {

/// C_n mod p via Lucas' theorem on the ballot form
/// C_n = binom(2n, n) - binom(2n, n+1). The difference form is total:
/// (n+1)^{-1} does not exist when p divides n+1.
inline u64 catalan_lucas_oracle(const mpz_class& n, const PrimeContext& ctx) {
    mpz_class two_n = 2 * n;
    return ctx.sub(binom_lucas(two_n, n, ctx), binom_lucas(two_n, n + 1, ctx));
}

constexpr std::size_t kConvolutionGuard = 100000;

/// [C_0 mod p, ..., C_n_max mod p] by the Segner recurrence
/// C_{m+1} = sum_{i<=m} C_i C_{m-i}, all arithmetic mod p. Deliberately
/// naive O(N^2): its value is independence from the Lucas route.
inline std::vector<u64> catalan_convolution(std::size_t n_max, const PrimeContext& ctx) {
    if (n_max > kConvolutionGuard) {
        throw ResourceError("catalan_convolution: n_max exceeds guard");
    }
    std::vector<u64> c(n_max + 1);
    c[0] = 1 % ctx.p();
    for (std::size_t m = 0; m < n_max; ++m) {
        u64 acc = 0;
        for (std::size_t i = 0; i <= m; ++i) {
            acc = ctx.add(acc, ctx.mul(c[i], c[m - i]));
        }
        c[m + 1] = acc;
    }
    return c;
}

}  // namespace catmod

#endif  // CATMOD_ORACLE_HPP
