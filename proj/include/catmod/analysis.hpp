#ifndef CATMOD_ANALYSIS_HPP
#define CATMOD_ANALYSIS_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catmod/automaton.hpp"
#include "catmod/field.hpp"
#include "catmod/oracle.hpp"

namespace catmod {

/// Exact residue counts of C_n mod p over n in [0, p^k). Counts are big
/// integers; p^k overflows fixed width quickly.
struct ResidueCensus {
    u64 p;
    unsigned k;
    std::vector<mpz_class> counts;  // indexed by residue

    mpz_class total() const {
        mpz_class t = 0;
        for (const auto& c : counts) t += c;
        return t;
    }
};

/// Counts all p^k length-k digit strings (leading zeros allowed, valid by
/// zero-padding invariance) by iterating the transition count vector, then
/// aggregates by state output. The single all-zero string is n = 0 and is
/// reassigned to residue 1 per the evaluation convention.
inline ResidueCensus residue_census(const Automaton& a, unsigned k) {
    if (k < 1) throw std::invalid_argument("residue_census: k must be >= 1");
    const u64 p = a.ctx().p();
    const std::size_t n_states = a.states().size();

    std::vector<mpz_class> v(n_states, 0);
    v[a.initial()] = 1;
    int zero_path_state = a.initial();
    for (unsigned i = 0; i < k; ++i) {
        std::vector<mpz_class> w(n_states, 0);
        for (std::size_t s = 0; s < n_states; ++s) {
            if (v[s] == 0) continue;
            for (unsigned d = 0; d < p; ++d) w[a.next(static_cast<int>(s), d)] += v[s];
        }
        v = std::move(w);
        zero_path_state = a.next(zero_path_state, 0);
    }

    ResidueCensus census{p, k, std::vector<mpz_class>(p, 0)};
    for (std::size_t s = 0; s < n_states; ++s) {
        census.counts[a.states()[s].output] += v[s];
    }
    census.counts[a.states()[zero_path_state].output] -= 1;
    census.counts[1 % p] += 1;
    return census;
}

/// Exact zero-class densities counts[0] / p^k for k = 1..k_max.
inline std::vector<mpq_class> zero_density_curve(const Automaton& a, unsigned k_max) {
    std::vector<mpq_class> curve;
    mpz_class pk = 1;
    for (unsigned k = 1; k <= k_max; ++k) {
        pk *= a.ctx().p();
        ResidueCensus c = residue_census(a, k);
        mpq_class q(c.counts[0], pk);
        q.canonicalize();
        curve.push_back(q);
    }
    return curve;
}

/// The digit set {(p+1)/2, ..., p-2}: any occurrence in the base-p expansion
/// of n forces p | C_n. Empty (with a flag) for p < 5.
struct ForcedZeroSet {
    std::vector<unsigned> digits;
    bool empty_for_small_p = false;
};

inline ForcedZeroSet forced_zero_digit_set(const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p < 5) return {{}, true};
    ForcedZeroSet s;
    for (u64 d = (p + 1) / 2; d <= p - 2; ++d) s.digits.push_back(static_cast<unsigned>(d));
    return s;
}

/// Verification report: one structural claim checked over finite parameters.
struct Report {
    std::string claim;
    u64 p;
    nlohmann::json params;
    bool verified;
    std::optional<std::string> counterexample;

    nlohmann::json to_json() const {
        nlohmann::json j{{"claim", claim},
                         {"p", p},
                         {"params", params},
                         {"status", verified ? "verified" : "failed"}};
        if (counterexample) j["counterexample"] = *counterexample;
        return j;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << (verified ? "[ ok ] " : "[FAIL] ") << claim << " (p=" << p << ")";
        if (counterexample) os << "  counterexample: " << *counterexample;
        return os.str();
    }
};

/// Checks via the Lucas oracle that C_n = 0 mod p for every n <= n_max whose
/// residue n mod p lies in the forced-zero set.
inline Report forced_zero_residues_check(const PrimeContext& ctx, u64 n_max) {
    Report r{"n mod p in {(p+1)/2..p-2} forces p | C_n", ctx.p(),
             {{"n_max", n_max}}, true, std::nullopt};
    ForcedZeroSet fz = forced_zero_digit_set(ctx);
    std::set<unsigned> forced(fz.digits.begin(), fz.digits.end());
    for (u64 n = 0; n <= n_max; ++n) {
        if (!forced.count(static_cast<unsigned>(n % ctx.p()))) continue;
        if (catalan_lucas_oracle(mpz_class(static_cast<unsigned long>(n)), ctx) != 0) {
            r.verified = false;
            r.counterexample = "n=" + std::to_string(n);
            break;
        }
    }
    return r;
}

/// Confirms C_{p^k - 1} = -1 mod p for k = 1..k_max, through the automaton's
/// digit path (k copies of p-1) and cross-checked with the Lucas oracle.
inline Report pk_minus_1_check(const PrimeContext& ctx, unsigned k_max) {
    Report r{"C_{p^k-1} = -1 mod p", ctx.p(), {{"k_max", k_max}}, true, std::nullopt};
    Automaton a = build(ctx);
    const u64 expected = ctx.neg(1);
    mpz_class n = 0;  // p^k - 1
    DigitString ds;
    for (unsigned k = 1; k <= k_max; ++k) {
        n = n * ctx.p() + (ctx.p() - 1);
        ds.digits.push_back(static_cast<unsigned>(ctx.p() - 1));
        if (evaluate(a, ds) != expected || catalan_lucas_oracle(n, ctx) != expected) {
            r.verified = false;
            r.counterexample = "k=" + std::to_string(k);
            break;
        }
    }
    return r;
}

/// Multiplicative closure of the nonzero central binomials
/// {binom(2d,d) : 0 <= d <= (p-1)/2} mod p, compared against the full group
/// (Z/pZ)^x and against the nonzero constant states of the built automaton.
struct GeneratorCheck {
    bool full_group;
    std::vector<u64> closure;  // sorted
    bool matches_automaton_constants;
};

inline GeneratorCheck generator_check(const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p < 5) throw std::invalid_argument("generator_check: requires p >= 5");
    std::set<u64> closure;
    for (u64 d = 0; d <= (p - 1) / 2; ++d) {
        u64 b = ctx.binom_small(static_cast<long long>(2 * d), static_cast<long long>(d));
        if (b != 0) closure.insert(b);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<u64> members(closure.begin(), closure.end());
        for (u64 a : members) {
            for (u64 b : members) {
                if (closure.insert(ctx.mul(a, b)).second) grew = true;
            }
        }
    }

    std::set<u64> constants;
    Automaton a = build(ctx);
    for (const auto& s : a.states()) {
        if (s.kind == StateKind::Constant) constants.insert(s.output);
    }

    GeneratorCheck gc;
    gc.full_group = closure.size() == p - 1;
    gc.closure.assign(closure.begin(), closure.end());
    gc.matches_automaton_constants = closure == constants;
    return gc;
}

/// Theorem check for p = 2: the generically built automaton outputs 1
/// exactly at n in {2^k - 1} for all n < 2^k_max.
inline Report mod2_characterization_check(unsigned k_max) {
    if (k_max > 20) throw std::invalid_argument("mod2_characterization_check: k_max > 20");
    PrimeContext ctx(2);
    Report r{"C_n odd iff n = 2^k - 1", 2, {{"k_max", k_max}}, true, std::nullopt};
    Automaton a = build(ctx);
    const u64 limit = u64{1} << k_max;
    for (u64 n = 0; n < limit; ++n) {
        bool is_pow2_minus_1 = ((n + 1) & n) == 0;
        u64 got = evaluate(a, digits_of(mpz_class(static_cast<unsigned long>(n)), ctx));
        if ((got == 1) != is_pow2_minus_1) {
            r.verified = false;
            r.counterexample = "n=" + std::to_string(n);
            break;
        }
    }
    return r;
}

}  // namespace catmod

#endif  // CATMOD_ANALYSIS_HPP
