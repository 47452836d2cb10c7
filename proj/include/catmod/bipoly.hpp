#ifndef CATMOD_BIPOLY_HPP
#define CATMOD_BIPOLY_HPP

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "catmod/field.hpp"

namespace catmod {

/// Sparse bivariate polynomial over F_p. Terms are kept in a map ordered
/// lexicographically by (deg_x, deg_y); zero coefficients are never stored,
/// so equality of term maps is structural polynomial equality.
class BiPoly {
public:
    using Key = std::pair<unsigned, unsigned>;
    using TermMap = std::map<Key, u64>;

    explicit BiPoly(u64 p) : p_(p) {}

    static BiPoly zero(u64 p) { return BiPoly(p); }

    static BiPoly monomial(u64 p, unsigned dx, unsigned dy, u64 c) {
        BiPoly f(p);
        f.set(dx, dy, c % p);
        return f;
    }

    static BiPoly constant(u64 p, u64 c) { return monomial(p, 0, 0, c); }

    u64 modulus() const { return p_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    u64 coeff(unsigned dx, unsigned dy) const {
        auto it = terms_.find({dx, dy});
        return it == terms_.end() ? 0 : it->second;
    }

    /// Constant term, i.e. the polynomial evaluated at x = 0, y = 0.
    u64 eval00() const { return coeff(0, 0); }

    unsigned deg_x() const {
        unsigned d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }

    unsigned deg_y() const {
        unsigned d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    void add_term(unsigned dx, unsigned dy, u64 c) {
        c %= p_;
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace({dx, dy}, c);
        if (!inserted) {
            it->second = (it->second + c) % p_;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.p_ == b.p_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        check_same_modulus(a, b);
        BiPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k.first, k.second, c);
        return r;
    }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        check_same_modulus(a, b);
        BiPoly r(a.p_);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb % a.p_);
            }
        }
        return r;
    }

    /// c * f, coefficientwise.
    friend BiPoly scale(u64 c, const BiPoly& f) {
        BiPoly r(f.p_);
        c %= f.p_;
        for (const auto& [k, a] : f.terms_) r.add_term(k.first, k.second, c * a % f.p_);
        return r;
    }

    /// Human-readable form, e.g. "y + 5xy + 5xy^2" (terms in map order).
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            auto [dx, dy] = k;
            if (c != 1 || (dx == 0 && dy == 0)) os << c;
            if (dx >= 1) os << "x";
            if (dx >= 2) os << "^" << dx;
            if (dy >= 1) os << "y";
            if (dy >= 2) os << "^" << dy;
        }
        return os.str();
    }

private:
    static void check_same_modulus(const BiPoly& a, const BiPoly& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("BiPoly: modulus mismatch");
    }

    void set(unsigned dx, unsigned dy, u64 c) {
        if (c != 0) terms_[{dx, dy}] = c;
    }

    u64 p_;
    TermMap terms_;
};

/// The kernel polynomial Q = x(y+1)^2 - 1.
inline BiPoly q_poly(const PrimeContext& ctx) {
    BiPoly q(ctx.p());
    q.add_term(1, 2, 1);
    q.add_term(1, 1, 2);
    q.add_term(1, 0, 1);
    q.add_term(0, 0, ctx.neg(1));
    return q;
}

/// The initial-state polynomial R = y(1 - 2xy - 2xy^2).
inline BiPoly initial_poly(const PrimeContext& ctx) {
    BiPoly r(ctx.p());
    r.add_term(0, 1, 1);
    r.add_term(1, 2, ctx.neg(2));
    r.add_term(1, 3, ctx.neg(2));
    return r;
}

/// Q^{p-1} via its closed-form expansion: the coefficient of x^k y^l is
/// binom(p-1,k) * binom(2k,l) * (-1)^k for 0 <= k <= p-1, 0 <= l <= 2k.
inline BiPoly q_power(const PrimeContext& ctx) {
    const u64 p = ctx.p();
    BiPoly r(p);
    for (u64 k = 0; k + 1 <= p; ++k) {
        u64 row = ctx.binom_small(static_cast<long long>(p - 1), static_cast<long long>(k));
        if (k % 2 == 1) row = ctx.neg(row);
        if (row == 0) continue;
        for (u64 l = 0; l <= 2 * k; ++l) {
            u64 c = ctx.mul(row, ctx.binom_small(static_cast<long long>(2 * k),
                                                 static_cast<long long>(l)));
            r.add_term(static_cast<unsigned>(k), static_cast<unsigned>(l), c);
        }
    }
    return r;
}

/// Cartier operator: keeps the terms whose degrees are congruent to
/// (d1, d2) mod p and divides those degrees by p.
inline BiPoly cartier(const BiPoly& f, unsigned d1, unsigned d2, const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (d1 >= p || d2 >= p) throw std::invalid_argument("cartier: digit out of range");
    BiPoly r(p);
    for (const auto& [k, c] : f.terms()) {
        if (k.first % p == d1 && k.second % p == d2) {
            r.add_term(k.first / p, k.second / p, c);
        }
    }
    return r;
}

/// One automaton transition: Lambda_{d,d}(s * Q^{p-1}), with qp = q_power(ctx).
/// The product is never materialized; only term pairs landing in the target
/// congruence class contribute.
inline BiPoly step(const BiPoly& s, unsigned d, const BiPoly& qp, const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (d >= p) throw std::invalid_argument("step: digit out of range");
    BiPoly r(p);
    for (const auto& [ks, cs] : s.terms()) {
        for (const auto& [kq, cq] : qp.terms()) {
            unsigned dx = ks.first + kq.first;
            unsigned dy = ks.second + kq.second;
            if (dx % p == d && dy % p == d) {
                r.add_term(dx / p, dy / p, cs * cq % p);
            }
        }
    }
    return r;
}

/// The basis monomials whose transitions have closed forms.
enum class Basis { One, Y, XY, XY2, XY3 };

inline BiPoly basis_poly(Basis b, u64 p) {
    switch (b) {
        case Basis::One: return BiPoly::monomial(p, 0, 0, 1);
        case Basis::Y: return BiPoly::monomial(p, 0, 1, 1);
        case Basis::XY: return BiPoly::monomial(p, 1, 1, 1);
        case Basis::XY2: return BiPoly::monomial(p, 1, 2, 1);
        case Basis::XY3: return BiPoly::monomial(p, 1, 3, 1);
    }
    throw std::invalid_argument("basis_poly: bad basis");
}

/// Closed form of Lambda_{d,d}(s * Q^{p-1}) for each basis monomial s.
/// Requires p >= 5.
inline BiPoly table1_closed_form(Basis b, unsigned d, const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p < 5) throw std::invalid_argument("table1_closed_form: requires p >= 5");
    if (d >= p) throw std::invalid_argument("table1_closed_form: digit out of range");
    const long long dd = d;
    switch (b) {
        case Basis::One:
            return BiPoly::constant(p, ctx.binom_small(2 * dd, dd));
        case Basis::Y:
            if (d == p - 1) {
                BiPoly r(p);
                r.add_term(0, 1, 1);
                r.add_term(0, 0, 1);
                return r;  // y + 1
            }
            return BiPoly::constant(p, ctx.binom_small(2 * dd, dd - 1));
        case Basis::XY:
            return BiPoly::constant(p, ctx.binom_small(2 * dd - 2, dd - 1));
        case Basis::XY2:
            if (d == 0) {
                BiPoly r(p);
                r.add_term(1, 1, 1);
                r.add_term(1, 2, 1);
                return r;  // xy(y+1)
            }
            return BiPoly::constant(p, ctx.binom_small(2 * dd - 2, dd - 2));
        case Basis::XY3:
            if (d == 0) {
                BiPoly r(p);
                r.add_term(1, 1, ctx.neg(2));
                r.add_term(1, 2, ctx.neg(2));
                return r;  // -2xy(y+1)
            }
            if (d == p - 1) {
                BiPoly r(p);
                r.add_term(0, 1, 1);
                r.add_term(0, 0, 1);
                return r;  // y + 1
            }
            return BiPoly::constant(p, ctx.binom_small(2 * dd - 2, dd - 3));
    }
    throw std::invalid_argument("table1_closed_form: bad basis");
}

}  // namespace catmod

#endif  // CATMOD_BIPOLY_HPP
