#ifndef CATMOD_FIELD_HPP
#define CATMOD_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace catmod {

using u64 = std::uint64_t;

/// Raised when a computation would exceed a configured size/memory guard.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A prime modulus p together with factorial and inverse-factorial tables
/// for 0..p-1. Immutable after construction; all member functions are pure.
class PrimeContext {
public:
    explicit PrimeContext(u64 p) : p_(p) {
        if (!is_prime(p)) {
            throw std::invalid_argument("PrimeContext: modulus " + std::to_string(p) +
                                        " is not prime");
        }
        fact_.resize(p);
        inv_fact_.resize(p);
        fact_[0] = 1;
        for (u64 k = 1; k < p; ++k) fact_[k] = mul(fact_[k - 1], k % p);
        inv_fact_[p - 1] = inv(fact_[p - 1]);
        for (u64 k = p - 1; k > 0; --k) inv_fact_[k - 1] = mul(inv_fact_[k], k % p);
    }

    u64 p() const { return p_; }

    u64 reduce(u64 a) const { return a % p_; }
    u64 add(u64 a, u64 b) const { return (a + b) % p_; }
    u64 sub(u64 a, u64 b) const { return (a + p_ - b % p_) % p_; }
    u64 neg(u64 a) const { return a % p_ == 0 ? 0 : p_ - a % p_; }
    u64 mul(u64 a, u64 b) const { return (a % p_) * (b % p_) % p_; }

    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % p_;
        a %= p_;
        while (e) {
            if (e & 1) r = r * a % p_;
            a = a * a % p_;
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse; a must be nonzero mod p.
    u64 inv(u64 a) const {
        if (a % p_ == 0) throw std::domain_error("inv: zero has no inverse");
        return pow(a, p_ - 2);
    }

    u64 factorial(u64 k) const { return fact_.at(k); }
    u64 inv_factorial(u64 k) const { return inv_fact_.at(k); }

    /// binom(n, k) mod p for 0 <= n <= 2p. Out-of-range k (k < 0 or k > n)
    /// gives 0, as does n < 0.
    u64 binom_small(long long n, long long k) const {
        if (n < 0 || k < 0 || k > n) return 0;
        if (static_cast<u64>(n) > 2 * p_) {
            throw std::invalid_argument("binom_small: n exceeds 2p");
        }
        if (static_cast<u64>(n) < p_) {
            return mul(fact_[n], mul(inv_fact_[k], inv_fact_[n - k]));
        }
        // One Lucas step: n has exactly two base-p digits here.
        u64 n1 = static_cast<u64>(n) / p_, n0 = static_cast<u64>(n) % p_;
        u64 k1 = static_cast<u64>(k) / p_, k0 = static_cast<u64>(k) % p_;
        if (k1 > n1 || k0 > n0) return 0;
        u64 hi = mul(fact_[n1], mul(inv_fact_[k1], inv_fact_[n1 - k1]));
        u64 lo = mul(fact_[n0], mul(inv_fact_[k0], inv_fact_[n0 - k0]));
        return mul(hi, lo);
    }

    static bool is_prime(u64 n) {
        if (n < 2) return false;
        for (u64 d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    }

private:
    u64 p_;
    std::vector<u64> fact_;
    std::vector<u64> inv_fact_;
};

/// binom(n, k) mod p by Lucas' theorem: the product over base-p digit pairs.
/// Zero as soon as some digit of k exceeds the matching digit of n.
inline u64 binom_lucas(const mpz_class& n, const mpz_class& k, const PrimeContext& ctx) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class nn = n, kk = k;
    u64 result = 1;
    while (kk > 0) {
        u64 nd = mpz_fdiv_ui(nn.get_mpz_t(), ctx.p());
        u64 kd = mpz_fdiv_ui(kk.get_mpz_t(), ctx.p());
        if (kd > nd) return 0;
        result = ctx.mul(result, ctx.binom_small(static_cast<long long>(nd),
                                                 static_cast<long long>(kd)));
        if (result == 0) return 0;
        mpz_fdiv_q_ui(nn.get_mpz_t(), nn.get_mpz_t(), ctx.p());
        mpz_fdiv_q_ui(kk.get_mpz_t(), kk.get_mpz_t(), ctx.p());
    }
    return result;
}

}  // namespace catmod

#endif  // CATMOD_FIELD_HPP
