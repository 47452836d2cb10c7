#ifndef CATMOD_AUTOMATON_HPP
#define CATMOD_AUTOMATON_HPP

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "catmod/bipoly.hpp"
#include "catmod/field.hpp"

namespace catmod {

/// Structural classification of a state polynomial. For p >= 5 every state
/// falls into one of the first five kinds; Other only occurs for p in {2, 3},
/// where the closed forms do not apply.
enum class StateKind { S1, S2, MinusYPlus1, Constant, Zero, Other };

inline std::string kind_name(StateKind k) {
    switch (k) {
        case StateKind::S1: return "s1";
        case StateKind::S2: return "s2";
        case StateKind::MinusYPlus1: return "-(y+1)";
        case StateKind::Constant: return "constant";
        case StateKind::Zero: return "zero";
        case StateKind::Other: return "other";
    }
    return "?";
}

/// s2 = 2xy(y+1).
inline BiPoly s2_poly(const PrimeContext& ctx) {
    BiPoly r(ctx.p());
    r.add_term(1, 1, 2 % ctx.p());
    r.add_term(1, 2, 2 % ctx.p());
    return r;
}

/// -(y+1).
inline BiPoly minus_y_plus_1_poly(const PrimeContext& ctx) {
    BiPoly r(ctx.p());
    r.add_term(0, 1, ctx.neg(1));
    r.add_term(0, 0, ctx.neg(1));
    return r;
}

inline StateKind classify_poly(const BiPoly& poly, const PrimeContext& ctx) {
    if (poly.is_zero()) return StateKind::Zero;
    if (poly == initial_poly(ctx)) return StateKind::S1;
    if (poly == s2_poly(ctx)) return StateKind::S2;
    if (poly == minus_y_plus_1_poly(ctx)) return StateKind::MinusYPlus1;
    if (poly.terms().size() == 1 && poly.terms().begin()->first == BiPoly::Key{0, 0}) {
        return StateKind::Constant;
    }
    return StateKind::Other;
}

struct State {
    int id;
    BiPoly poly;
    u64 output;  // = poly.eval00()
    StateKind kind;
};

/// Base-p digits of n, least significant first. Canonical: no high-order
/// zero digit; n = 0 is the empty string.
struct DigitString {
    std::vector<unsigned> digits;

    bool empty() const { return digits.empty(); }
    std::size_t size() const { return digits.size(); }
};

inline DigitString digits_of(const mpz_class& n, const PrimeContext& ctx) {
    if (n < 0) throw std::invalid_argument("digits_of: negative n");
    DigitString ds;
    mpz_class m = n;
    while (m > 0) {
        ds.digits.push_back(static_cast<unsigned>(mpz_fdiv_ui(m.get_mpz_t(), ctx.p())));
        mpz_fdiv_q_ui(m.get_mpz_t(), m.get_mpz_t(), ctx.p());
    }
    return ds;
}

inline DigitString decimal_to_digits(const std::string& n, const PrimeContext& ctx) {
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("decimal_to_digits: malformed decimal string '" + n + "'");
    }
    return digits_of(mpz_class(n, 10), ctx);
}

/// Dense-table build guard: the delta table has |states| * p entries.
constexpr u64 kBuildGuard = 50021;

class Automaton {
public:
    Automaton(PrimeContext ctx, std::vector<State> states, std::vector<std::vector<int>> delta)
        : ctx_(std::move(ctx)), states_(std::move(states)), delta_(std::move(delta)) {}

    const PrimeContext& ctx() const { return ctx_; }
    const std::vector<State>& states() const { return states_; }
    const std::vector<std::vector<int>>& delta() const { return delta_; }
    int initial() const { return 0; }

    int next(int state, unsigned digit) const { return delta_[state][digit]; }

    std::optional<int> find_state(const BiPoly& poly) const {
        for (const auto& s : states_) {
            if (s.poly == poly) return s.id;
        }
        return std::nullopt;
    }

private:
    PrimeContext ctx_;
    std::vector<State> states_;
    std::vector<std::vector<int>> delta_;
};

/// Breadth-first state closure from R under d -> Lambda_{d,d}(s * Q^{p-1}).
/// Digits are explored 0..p-1 and ids assigned in discovery order, so the
/// result is reproducible. Throws ResourceError above the build guard and
/// std::logic_error if the closure exceeds p+3 states for p >= 5.
inline Automaton build(const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p > kBuildGuard) {
        throw ResourceError("build: p exceeds dense-table guard " + std::to_string(kBuildGuard));
    }
    const BiPoly qp = q_power(ctx);

    // States decompose into monomials from a handful of shapes, so per-digit
    // transitions of single monomials are cached and combined by linearity.
    std::map<std::tuple<unsigned, unsigned, unsigned>, BiPoly> mono_cache;
    auto step_cached = [&](const BiPoly& s, unsigned d) {
        BiPoly r(p);
        for (const auto& [k, c] : s.terms()) {
            auto key = std::make_tuple(k.first, k.second, d);
            auto it = mono_cache.find(key);
            if (it == mono_cache.end()) {
                it = mono_cache.emplace(key, step(BiPoly::monomial(p, k.first, k.second, 1),
                                                  d, qp, ctx)).first;
            }
            r = r + scale(c, it->second);
        }
        return r;
    };

    std::vector<State> states;
    std::vector<std::vector<int>> delta;
    std::map<BiPoly::TermMap, int> index;

    auto intern = [&](const BiPoly& poly) {
        auto it = index.find(poly.terms());
        if (it != index.end()) return it->second;
        int id = static_cast<int>(states.size());
        states.push_back({id, poly, poly.eval00(), classify_poly(poly, ctx)});
        index.emplace(poly.terms(), id);
        if (p >= 5 && states.size() > p + 3) {
            throw std::logic_error("build: closure exceeded p+3 states");
        }
        return id;
    };

    std::deque<int> queue;
    queue.push_back(intern(initial_poly(ctx)));
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        if (static_cast<std::size_t>(id) >= delta.size()) delta.resize(id + 1);
        delta[id].assign(p, -1);
        BiPoly poly = states[id].poly;
        for (unsigned d = 0; d < p; ++d) {
            BiPoly t = step_cached(poly, d);
            std::size_t before = states.size();
            int tid = intern(t);
            if (states.size() > before) queue.push_back(tid);
            delta[id][d] = tid;
        }
    }
    delta.resize(states.size());
    return Automaton(ctx, std::move(states), std::move(delta));
}

/// Fold the digits LSD-first from the initial state; the final state's
/// output is C_n mod p. The empty string (n = 0) returns 1 directly: the
/// eval-at-(0,0) convention gives 0 on both s1 and s2 while C_0 = 1.
inline u64 evaluate(const Automaton& a, const DigitString& n,
                    std::vector<int>* trace = nullptr) {
    const u64 p = a.ctx().p();
    if (!n.empty() && n.digits.back() == 0) {
        throw std::invalid_argument("evaluate: non-canonical digit string (high-order zero)");
    }
    for (unsigned d : n.digits) {
        if (d >= p) throw std::invalid_argument("evaluate: digit out of range");
    }
    if (n.empty()) return 1 % p;
    int state = a.initial();
    if (trace) trace->push_back(state);
    for (unsigned d : n.digits) {
        state = a.next(state, d);
        if (trace) trace->push_back(state);
    }
    return a.states()[state].output;
}

/// A state in closed-form (Table-2) evaluation: a kind plus, for Constant,
/// its value. Constant 0 normalizes to Zero.
struct ClosedState {
    StateKind kind;
    u64 value = 0;

    static ClosedState constant(u64 v) {
        return v == 0 ? ClosedState{StateKind::Zero, 0} : ClosedState{StateKind::Constant, v};
    }

    friend bool operator==(const ClosedState& a, const ClosedState& b) {
        return a.kind == b.kind && (a.kind != StateKind::Constant || a.value == b.value);
    }
};

/// The closed-form transition table for p >= 5. Constant states other than 1
/// scale the constant-1 row by linearity of the Cartier operator.
inline ClosedState transition_closed_form(const ClosedState& s, unsigned d,
                                          const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (p < 5) throw std::invalid_argument("transition_closed_form: requires p >= 5");
    if (d >= p) throw std::invalid_argument("transition_closed_form: digit out of range");
    if (s.kind == StateKind::Zero) return {StateKind::Zero, 0};
    const long long dd = d;
    if (d == 0) {
        switch (s.kind) {
            case StateKind::S1:
            case StateKind::S2: return {StateKind::S2, 0};
            case StateKind::Constant: return ClosedState::constant(s.value);
            case StateKind::MinusYPlus1: return ClosedState::constant(ctx.neg(1));
            default: break;
        }
    } else if (d <= (p - 1) / 2) {
        switch (s.kind) {
            case StateKind::S1:
                return ClosedState::constant(
                    ctx.mul(ctx.inv(d), ctx.binom_small(2 * dd, dd - 1)));
            case StateKind::S2:
                return ClosedState::constant(ctx.mul(2, ctx.binom_small(2 * dd - 1, dd)));
            case StateKind::Constant:
                return ClosedState::constant(ctx.mul(s.value, ctx.binom_small(2 * dd, dd)));
            case StateKind::MinusYPlus1:
                return ClosedState::constant(ctx.neg(ctx.binom_small(2 * dd + 1, dd)));
            default: break;
        }
    } else if (d <= p - 2) {
        return {StateKind::Zero, 0};
    } else {  // d == p - 1
        switch (s.kind) {
            case StateKind::S1: return {StateKind::MinusYPlus1, 0};
            case StateKind::S2:
            case StateKind::Constant: return {StateKind::Zero, 0};
            case StateKind::MinusYPlus1: return {StateKind::MinusYPlus1, 0};
            default: break;
        }
    }
    throw std::invalid_argument("transition_closed_form: state kind has no closed form");
}

inline u64 closed_output(const ClosedState& s, const PrimeContext& ctx) {
    switch (s.kind) {
        case StateKind::MinusYPlus1: return ctx.neg(1);
        case StateKind::Constant: return s.value;
        default: return 0;  // s1, s2 and zero all evaluate to 0 at (0,0)
    }
}

/// Table-2 evaluation without any automaton table; O(1) space for any p >= 5.
inline u64 evaluate_closed_form(const PrimeContext& ctx, const DigitString& n) {
    const u64 p = ctx.p();
    if (p < 5) throw std::invalid_argument("evaluate_closed_form: requires p >= 5");
    if (!n.empty() && n.digits.back() == 0) {
        throw std::invalid_argument("evaluate_closed_form: non-canonical digit string");
    }
    if (n.empty()) return 1;
    ClosedState s{StateKind::S1, 0};
    for (unsigned d : n.digits) s = transition_closed_form(s, d, ctx);
    return closed_output(s, ctx);
}

/// Coalesces a sorted digit set into range notation: {0..2,4}. A single
/// digit is printed bare.
inline std::string format_digit_set(const std::vector<unsigned>& digits) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < digits.size()) {
        std::size_t j = i;
        while (j + 1 < digits.size() && digits[j + 1] == digits[j] + 1) ++j;
        if (j == i) {
            parts.push_back(std::to_string(digits[i]));
        } else if (j == i + 1) {
            parts.push_back(std::to_string(digits[i]));
            parts.push_back(std::to_string(digits[j]));
        } else {
            parts.push_back(std::to_string(digits[i]) + ".." + std::to_string(digits[j]));
        }
        i = j + 1;
    }
    if (parts.size() == 1 && parts[0].find("..") == std::string::npos) return parts[0];
    std::string s = "{";
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) s += ",";
        s += parts[k];
    }
    return s + "}";
}

/// DOT digraph: one node per state, edges grouped by target with coalesced
/// digit labels; the zero state is drawn distinctly and constants share one
/// shape, matching the paper's figures.
inline std::string export_dot(const Automaton& a) {
    std::ostringstream os;
    os << "digraph catalan_mod_" << a.ctx().p() << " {\n";
    os << "  rankdir=LR;\n";
    for (const auto& s : a.states()) {
        os << "  s" << s.id << " [label=\"s" << s.id << ": " << s.poly.str()
           << " (out=" << s.output << ")\"";
        if (s.kind == StateKind::Zero) {
            os << ", shape=doublecircle";
        } else if (s.kind == StateKind::Constant) {
            os << ", shape=box";
        }
        os << "];\n";
    }
    for (const auto& s : a.states()) {
        std::map<int, std::vector<unsigned>> by_target;
        for (unsigned d = 0; d < a.ctx().p(); ++d) {
            by_target[a.next(s.id, d)].push_back(d);
        }
        for (const auto& [target, digits] : by_target) {
            os << "  s" << s.id << " -> s" << target << " [label=\""
               << format_digit_set(digits) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

inline nlohmann::json automaton_to_json(const Automaton& a) {
    nlohmann::json j;
    j["p"] = a.ctx().p();
    j["states"] = nlohmann::json::array();
    for (const auto& s : a.states()) {
        nlohmann::json poly = nlohmann::json::array();
        for (const auto& [k, c] : s.poly.terms()) {
            poly.push_back({k.first, k.second, c});
        }
        j["states"].push_back({{"id", s.id},
                               {"poly", poly},
                               {"output", s.output},
                               {"kind", kind_name(s.kind)}});
    }
    j["initial"] = a.initial();
    j["delta"] = a.delta();
    return j;
}

inline std::string export_json(const Automaton& a) {
    return automaton_to_json(a).dump(2) + "\n";
}

inline Automaton automaton_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PrimeContext ctx(j.at("p").get<u64>());
    std::vector<State> states;
    for (const auto& js : j.at("states")) {
        BiPoly poly(ctx.p());
        for (const auto& t : js.at("poly")) {
            poly.add_term(t.at(0).get<unsigned>(), t.at(1).get<unsigned>(), t.at(2).get<u64>());
        }
        states.push_back({js.at("id").get<int>(), poly, js.at("output").get<u64>(),
                          classify_poly(poly, ctx)});
    }
    auto delta = j.at("delta").get<std::vector<std::vector<int>>>();
    return Automaton(std::move(ctx), std::move(states), std::move(delta));
}

}  // namespace catmod

#endif  // CATMOD_AUTOMATON_HPP
