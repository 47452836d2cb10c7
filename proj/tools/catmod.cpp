// Command-line surface for the C_n mod p automaton: build/export, digit-fed
// evaluation, verification suites, residue censuses and the structural
// claim reports.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
// guard exceeded.

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catmod/analysis.hpp"
#include "catmod/automaton.hpp"
#include "catmod/bipoly.hpp"
#include "catmod/field.hpp"
#include "catmod/oracle.hpp"

namespace {

using namespace catmod;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << text;
}

int cmd_build(u64 p, const std::string& dot_path, const std::string& json_path,
              bool closed_form) {
    PrimeContext ctx(p);
    if (closed_form) {
        if (p < 5) throw std::invalid_argument("--closed-form requires p >= 5");
        if (!dot_path.empty() || !json_path.empty()) {
            throw std::invalid_argument("--closed-form does not materialize a table; "
                                        "exports unavailable");
        }
        std::cout << "p: " << p << "\nmode: closed-form (no table materialized)\n"
                  << "states: <= " << p + 3 << " (budget p+3)\n";
        return 0;
    }
    Automaton a = build(ctx);
    if (!dot_path.empty()) write_file(dot_path, export_dot(a));
    if (!json_path.empty()) write_file(json_path, export_json(a));
    std::cout << "p: " << p << "\nstates: " << a.states().size()
              << " (budget p+3 = " << p + 3 << ")\n";
    return 0;
}

int cmd_eval(u64 p, const std::string& n, bool trace, bool closed_form) {
    PrimeContext ctx(p);
    DigitString ds = decimal_to_digits(n, ctx);
    if (closed_form) {
        std::cout << evaluate_closed_form(ctx, ds) << "\n";
        return 0;
    }
    Automaton a = build(ctx);
    std::vector<int> path;
    u64 value = evaluate(a, ds, trace ? &path : nullptr);
    if (trace) {
        for (int id : path) {
            std::cout << "s" << id << ": " << a.states()[id].poly.str() << "\n";
        }
    }
    std::cout << value << "\n";
    return 0;
}

bool verify_table1(const PrimeContext& ctx) {
    BiPoly qp = q_power(ctx);
    bool ok = true;
    for (Basis b : {Basis::One, Basis::Y, Basis::XY, Basis::XY2, Basis::XY3}) {
        for (unsigned d = 0; d < ctx.p(); ++d) {
            BiPoly generic = step(basis_poly(b, ctx.p()), d, qp, ctx);
            if (generic != table1_closed_form(b, d, ctx)) {
                std::cout << "[FAIL] table1: basis mismatch at d=" << d << "\n";
                ok = false;
            }
        }
    }
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << "table1 conformance (p=" << ctx.p() << ")\n";
    return ok;
}

bool verify_table2(const PrimeContext& ctx) {
    Automaton a = build(ctx);
    bool ok = true;
    for (const auto& s : a.states()) {
        ClosedState cs{s.kind, s.output};
        for (unsigned d = 0; d < ctx.p(); ++d) {
            const State& target = a.states()[a.next(s.id, d)];
            ClosedState expected = transition_closed_form(cs, d, ctx);
            if (!(ClosedState{target.kind, target.output} == expected)) {
                std::cout << "[FAIL] table2: s" << s.id << " --" << d << "--> s"
                          << target.id << " disagrees with closed form\n";
                ok = false;
            }
        }
    }
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << "table2 conformance (p=" << ctx.p() << ")\n";
    return ok;
}

bool verify_oracle(const PrimeContext& ctx, u64 max_n) {
    Automaton a = build(ctx);
    bool ok = true;
    for (u64 n = 0; n <= max_n; ++n) {
        mpz_class nz(static_cast<unsigned long>(n));
        if (evaluate(a, digits_of(nz, ctx)) != catalan_lucas_oracle(nz, ctx)) {
            std::cout << "[FAIL] oracle: automaton vs Lucas differ at n=" << n << "\n";
            ok = false;
            break;
        }
    }
    std::size_t conv_n = static_cast<std::size_t>(std::min<u64>(max_n, 5000));
    std::vector<u64> conv = catalan_convolution(conv_n, ctx);
    for (std::size_t n = 0; n <= conv_n; ++n) {
        if (conv[n] != catalan_lucas_oracle(mpz_class(static_cast<unsigned long>(n)), ctx)) {
            std::cout << "[FAIL] oracle: convolution vs Lucas differ at n=" << n << "\n";
            ok = false;
            break;
        }
    }
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << "oracle equivalence (p=" << ctx.p()
              << ", n <= " << max_n << ")\n";
    return ok;
}

bool verify_density(const PrimeContext& ctx) {
    Automaton a = build(ctx);
    bool ok = true;
    // Census vs direct oracle sweep wherever the sweep is affordable.
    mpz_class pk = 1;
    for (unsigned k = 1; ; ++k) {
        pk *= ctx.p();
        if (pk > 200000) break;
        ResidueCensus census = residue_census(a, k);
        std::vector<mpz_class> sweep(ctx.p(), 0);
        u64 limit = pk.get_ui();
        for (u64 n = 0; n < limit; ++n) {
            sweep[catalan_lucas_oracle(mpz_class(static_cast<unsigned long>(n)), ctx)] += 1;
        }
        if (census.counts != sweep) {
            std::cout << "[FAIL] density: census disagrees with oracle sweep at k=" << k << "\n";
            ok = false;
        }
    }
    auto curve = zero_density_curve(a, 8);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i] < curve[i - 1]) {
            std::cout << "[FAIL] density: zero-class density not nondecreasing at k="
                      << i + 1 << "\n";
            ok = false;
        }
    }
    std::cout << (ok ? "[ ok ] " : "[FAIL] ") << "density census (p=" << ctx.p() << ")\n";
    return ok;
}

bool verify_mod2() {
    Report r = mod2_characterization_check(16);
    std::cout << r.to_text() << "\n";
    return r.verified;
}

bool verify_claims(const PrimeContext& ctx, u64 max_n) {
    bool ok = true;
    Report fz = forced_zero_residues_check(ctx, max_n);
    std::cout << fz.to_text() << "\n";
    ok &= fz.verified;
    Report pk = pk_minus_1_check(ctx, 20);
    std::cout << pk.to_text() << "\n";
    ok &= pk.verified;
    return ok;
}

int cmd_verify(u64 p, u64 max_n, const std::string& suite) {
    PrimeContext ctx(p);
    bool ok = true;
    bool closed_forms = ctx.p() >= 5;
    if (suite == "table1" || suite == "all") {
        if (closed_forms) ok &= verify_table1(ctx);
        else if (suite == "table1") throw std::invalid_argument("table1 requires p >= 5");
    }
    if (suite == "table2" || suite == "all") {
        if (closed_forms) ok &= verify_table2(ctx);
        else if (suite == "table2") throw std::invalid_argument("table2 requires p >= 5");
    }
    if (suite == "oracle" || suite == "all") ok &= verify_oracle(ctx, max_n);
    if (suite == "density" || suite == "all") ok &= verify_density(ctx);
    if (suite == "mod2" || suite == "all") ok &= verify_mod2();
    if (suite == "all" && closed_forms) ok &= verify_claims(ctx, max_n);
    return ok ? 0 : 1;
}

int cmd_density(u64 p, unsigned k) {
    PrimeContext ctx(p);
    if (k < 1 || k > 64) throw ResourceError("density: --digits out of range");
    Automaton a = build(ctx);
    ResidueCensus census = residue_census(a, k);
    mpz_class pk = census.total();
    std::cout << "p = " << p << ", n < " << p << "^" << k << " = " << pk << "\n";
    for (u64 r = 0; r < p; ++r) {
        mpq_class q(census.counts[r], pk);
        q.canonicalize();
        std::cout << "residue " << r << ": count " << census.counts[r]
                  << "  density " << q << "\n";
    }
    std::cout << "zero-class density by digit length:\n";
    auto curve = zero_density_curve(a, k);
    for (unsigned i = 0; i < k; ++i) {
        std::cout << "  k=" << i + 1 << ": " << curve[i] << "\n";
    }
    return 0;
}

int cmd_table(u64 p) {
    PrimeContext ctx(p);
    ForcedZeroSet fz = forced_zero_digit_set(ctx);
    if (fz.empty_for_small_p) {
        std::cout << "forced-zero digit set is empty for p = " << p << "\n";
        return 0;
    }
    std::cout << "forced-zero digits: " << format_digit_set(fz.digits) << "\n";
    std::cout << "forced-zero residue classes mod " << p << ": "
              << format_digit_set(fz.digits) << "\n";
    return 0;
}

int cmd_gens(u64 p) {
    PrimeContext ctx(p);
    if (p < 5) throw std::invalid_argument("gens requires p >= 5");
    GeneratorCheck gc = generator_check(ctx);
    std::cout << (gc.full_group ? "true" : "false") << ", closure size "
              << gc.closure.size() << "\n";
    std::cout << "closure matches automaton constants: "
              << (gc.matches_automaton_constants ? "yes" : "no") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Catalan numbers mod p via the Cartier-operator automaton"};
    app.require_subcommand(1);

    u64 p = 0;
    std::string n, dot_path, json_path, suite = "all";
    u64 max_n = 10000;
    unsigned digits = 4;
    bool trace = false, closed_form = false;

    auto* b = app.add_subcommand("build", "Build the automaton and export it");
    b->add_option("p", p, "prime modulus")->required();
    b->add_option("--dot", dot_path, "write DOT state diagram");
    b->add_option("--json", json_path, "write JSON automaton");
    b->add_flag("--closed-form", closed_form, "report the Table-2 description only");

    auto* e = app.add_subcommand("eval", "Compute C_n mod p");
    e->add_option("p", p, "prime modulus")->required();
    e->add_option("n", n, "n as a decimal string")->required();
    e->add_flag("--trace", trace, "print the state path");
    e->add_flag("--closed-form", closed_form, "use Table-2 transitions, no table");

    auto* v = app.add_subcommand("verify", "Run verification suites");
    v->add_option("p", p, "prime modulus")->required();
    v->add_option("--max-n", max_n, "sweep bound for oracle checks");
    v->add_option("--suite", suite, "table1|table2|oracle|density|mod2|all")
        ->check(CLI::IsMember({"table1", "table2", "oracle", "density", "mod2", "all"}));

    auto* d = app.add_subcommand("density", "Exact residue census over n < p^k");
    d->add_option("p", p, "prime modulus")->required();
    d->add_option("--digits", digits, "digit length k");

    auto* t = app.add_subcommand("table", "Print the forced-zero digit set");
    t->add_option("p", p, "prime modulus")->required();

    auto* g = app.add_subcommand("gens", "Central-binomial generator check");
    g->add_option("p", p, "prime modulus")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (b->parsed()) return cmd_build(p, dot_path, json_path, closed_form);
        if (e->parsed()) return cmd_eval(p, n, trace, closed_form);
        if (v->parsed()) return cmd_verify(p, max_n, suite);
        if (d->parsed()) return cmd_density(p, digits);
        if (t->parsed()) return cmd_table(p);
        if (g->parsed()) return cmd_gens(p);
    } catch (const catmod::ResourceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
