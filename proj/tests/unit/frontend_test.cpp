#include "catch_amalgamated.hpp"

#include "allocation_checker.hpp"
#include "generators.hpp"
#include "gk2dlp/asp.hpp"
#include "gk2dlp/error.hpp"
#include "gk2dlp/fair_division.hpp"
#include "gk2dlp/frontend.hpp"
#include "gk2dlp/parse.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace gk2dlp;
using namespace gk2dlp::frontend;
using gk::GkFormula;
using prop::Formula;

namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
const std::string kBinary = GK2DLP_BINARY;
const std::string kSolver = kBinary + " lp-solve";

/// Line and column of the ParseError thrown by `f`.
template <class Fn> std::pair<std::size_t, std::size_t> error_position(Fn f) {
    try {
        f();
    } catch (const ParseError& e) {
        return {e.line(), e.column()};
    }
    FAIL("no parse error");
    return {0, 0};
}

embed::UclFormula random_ucl(std::mt19937_64& rng, const std::vector<std::string>& atoms, int depth) {
    using embed::UclFormula;
    std::uniform_int_distribution<int> d(0, 5);
    const int k = depth == 0 ? d(rng) % 2 : d(rng);
    switch (k) {
    case 0: return UclFormula::atom_of(atoms[std::uniform_int_distribution<std::size_t>(0, atoms.size() - 1)(rng)]);
    case 1: return UclFormula::c(testing::random_formula(rng, atoms, 2));
    case 2: return UclFormula::neg(random_ucl(rng, atoms, depth - 1));
    case 3: return UclFormula::conj(random_ucl(rng, atoms, depth - 1), random_ucl(rng, atoms, depth - 1));
    default: return UclFormula::disj(random_ucl(rng, atoms, depth - 1), random_ucl(rng, atoms, depth - 1));
    }
}

int run(const std::string& args) {
    const int status = std::system((kBinary + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path scratch_file(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "gk2dlp_frontend_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("GK theory files", "[frontend][parse]") {
    const auto T = parse_gk("# normal default\n~A(~p) -> K(p)\n\nK(p) & A(q | ~q)\n");
    REQUIRE(T.size() == 2);
    CHECK(T[0] == gk::implies(gk::neg(GkFormula::A(prop::neg(p))), GkFormula::K(p)));
    CHECK(T[1] == gk::conj(GkFormula::K(p), GkFormula::A(prop::disj(q, prop::neg(q)))));
}

TEST_CASE("propositional precedence and implication", "[frontend][parse]") {
    CHECK(parse_formula("~p & q | p") == prop::disj(prop::conj(prop::neg(p), q), p));
    CHECK(parse_formula("p -> q -> p") == prop::implies(p, prop::implies(q, p)));
    CHECK(parse_formula("true & false") == prop::conj(Formula::verum(), Formula::falsum()));
}

TEST_CASE("syntax errors carry positions", "[frontend][parse]") {
    CHECK(error_position([] { parse_gk("K(A(p))"); }) == std::pair<std::size_t, std::size_t>{1, 3});
    CHECK(error_position([] { parse_gk("K(p)\n  K(q"); }).first == 2);
    CHECK(error_position([] { parse_gk("K(p) & q"); }) == std::pair<std::size_t, std::size_t>{1, 8});
    CHECK(error_position([] { parse_formula("p & not"); }) == std::pair<std::size_t, std::size_t>{1, 5});
    CHECK(error_position([] { parse_formula("p $ q"); }) == std::pair<std::size_t, std::size_t>{1, 3});
    CHECK_THROWS_WITH(parse_gk("K(A(p))"), Catch::Matchers::ContainsSubstring("nested modality"));
    CHECK_THROWS_AS(parse_dl("p\n"), ParseError);
    CHECK_THROWS_AS(parse_ael("~L(p) | ~L(q)\n"), ParseError);
    CHECK_THROWS_AS(parse_lp("p :- q"), ParseError);
    CHECK_THROWS_AS(parse_lp("p :- not not not q."), ParseError);
    CHECK_THROWS_AS(parse_ucl("C(C(p))"), ParseError);
}

TEST_CASE("default theory files", "[frontend][parse]") {
    auto dt = parse_dl("[D]\n: p / p\n");
    REQUIRE(dt.D.size() == 1);
    CHECK(dt.D[0] == embed::Default{Formula::verum(), {p}, p});

    dt = parse_dl("[W]\nq\n[D]\nq : p, ~p / p | q\nq : / p\n");
    CHECK(dt.W == std::vector<Formula>{q});
    REQUIRE(dt.D.size() == 2);
    CHECK(dt.D[0] == embed::Default{q, {p, prop::neg(p)}, prop::disj(p, q)});
    CHECK(dt.D[1] == embed::Default{q, {}, p});
}

TEST_CASE("autoepistemic files", "[frontend][parse]") {
    const auto s = parse_ael("[AEL]\n~L(p) | L(q) | q | ~p\nL(p)\n");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == embed::AelSentence{p, {q}, prop::disj(q, prop::neg(p))});
    CHECK(s[1] == embed::AelSentence{std::nullopt, {p}, std::nullopt});
}

TEST_CASE("causal theory files", "[frontend][parse]") {
    const auto u = parse_ucl("[ATOMS] p q r\np & ~q -> C(p & ~q)\n");
    CHECK(u.universe == std::vector<std::string>{"p", "q", "r"});
    REQUIRE(u.formulas.size() == 1);
    CHECK(embed::to_string(u.formulas[0]) == "~(p & ~q) | C(p & ~q)");
}

TEST_CASE("logic program files", "[frontend][parse]") {
    const auto P = parse_lp("% comment\np | q :- r, not s.\nr.\n:- p, not not q.\n-p ; q :- #true.\n");
    REQUIRE(P.rules.size() == 4);
    CHECK(dlp::to_string(P.rules[0]) == "p ; q :- r, not s.");
    CHECK(dlp::to_string(P.rules[1]) == "r.");
    CHECK(dlp::to_string(P.rules[2]) == ":- p, not not q.");
    CHECK(dlp::to_string(P.rules[3]) == "-p ; q.");
    CHECK(embed::simple_rules(parse_lp("p :- q, not r.")) == std::vector<embed::SimpleRule>{{{"p"}, {"q"}, {"r"}}});
}

TEST_CASE("printers and parsers round-trip", "[frontend][parse][random]") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
        const auto T = testing::random_theory(rng, {});
        CHECK(parse_gk(print_gk(T)) == T);

        const auto dt = testing::random_default_theory(rng, 3, 3);
        CHECK(parse_dl(print_dl(dt)) == dt);

        auto ael = embed::konolige(dt);
        ael.push_back({std::nullopt, {p}, std::nullopt});
        CHECK(parse_ael(print_ael(ael)) == ael);

        const embed::UclTheory u{{random_ucl(rng, {"p", "q"}, 3), random_ucl(rng, {"p", "q"}, 2)}, {"p", "q", "r"}};
        CHECK(parse_ucl(print_ucl(u)) == u);

        const auto flat = dlp::flatten(testing::random_nested_program(rng, {"p", "q", "r"}, 3));
        CHECK(dlp::flatten(parse_lp(print_lp(flat))) == flat);
    }
}

TEST_CASE("emitted program text", "[frontend][emit]") {
    const auto out = translator::tr_lp(parse_gk("~A(~p) -> K(p)"));
    const auto text = emit_asp(out);
    CHECK(text.program.find("u :- c__1, not k__1.\n") != std::string::npos);
    CHECK(text.program.find("\np | -p.\n") != std::string::npos);
    CHECK(text.program.find(":- not u.\n") != std::string::npos);
    CHECK(text.map.find("k__1\tkAtom\tp\n") != std::string::npos);
    CHECK(text.map.find("a__1\taAtom\t~p\n") != std::string::npos);

    std::set<std::string> mapped;
    std::istringstream lines(text.map);
    for (std::string line; std::getline(lines, line);) mapped.insert(line.substr(0, line.find('\t')));
    for (const auto& x : dlp::atoms(out.program)) CHECK(mapped.count(x) == 1);

    CHECK(emit_asp(translator::tr_lp(parse_gk("~A(~p) -> K(p)"))).program == text.program);
}

TEST_CASE("emitted text solves like the program it came from", "[frontend][emit][random]") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 25; ++i) {
        translator::TranslateOptions o;
        o.cnf = i % 2 ? prop::CnfMode::Structural : prop::CnfMode::Distributive;
        o.nested_constraint = i % 3 == 0;
        const auto out = translator::tr_lp(testing::random_theory(rng, {2, 3, 2}), o);
        CHECK(dlp::solve(parse_lp(emit_asp(out).program)) == dlp::solve(out.program));
    }
}

TEST_CASE("solver output formats", "[frontend][external]") {
    CHECK(parse_solver_output("UNSATISFIABLE\n").empty());
    CHECK(parse_solver_output("clingo version 5\nReading from stdin\nUNSATISFIABLE\n").empty());
    CHECK(parse_solver_output("k__1 u v -p\n") == std::vector<dlp::LiteralSet>{{dlp::pos("k__1"), dlp::pos("u"), dlp::pos("v"), dlp::negl("p")}});
    const auto two = parse_solver_output("Solving...\nAnswer: 1\nu v\nAnswer: 2\nu v q\nSATISFIABLE\n\nModels : 2\n");
    CHECK(two.size() == 2);
    CHECK_THROWS_AS(parse_solver_output("1.5 seconds\n"), AdapterError);
    CHECK_THROWS_AS(parse_solver_output("Answer: 1\n"), AdapterError);
}

TEST_CASE("external solver path", "[frontend][external]") {
    const auto out = translator::tr_lp(parse_gk("~A(~p) -> K(p)"));
    const auto program = emit_asp(out).program;
    CHECK(run_external(program, kSolver) == dlp::solve(out.program));
    CHECK(run_external(":- #true.\n", kSolver).empty());
    CHECK_THROWS_AS(run_external(program, "false"), SolverError);
    CHECK_THROWS_AS(run_external(program, "echo 'x = 1'"), AdapterError);
}

TEST_CASE("pipeline: internal and external solvers agree", "[frontend][external][random]") {
    std::mt19937_64 rng(53);
    SolveOptions external;
    external.solver_cmd = kSolver;
    for (int i = 0; i < 20; ++i) {
        const Input in{Source::Gk, testing::random_theory(rng, {2, 3, 2}), std::nullopt};
        CHECK(solve(in).models == solve(in, external).models);
    }
}

TEST_CASE("pipeline examples", "[frontend][pipeline]") {
    auto in = load(Source::Dl, "[D]\n: p / p\n");
    auto r = solve(in);
    REQUIRE(r.models.size() == 1);
    CHECK(listing(in, r) == "1 model\nK: {true, p}  generators: {p}\n");

    in = load(Source::Gk, "~A(p) -> K(p)\n");
    CHECK(solve(in).models.empty());
    CHECK(listing(in, solve(in)) == "0 models\n");

    in = load(Source::Ucl, "[ATOMS] p q\np & ~q -> C(p & ~q)\n");
    CHECK(solve(in).models == oracle(in).models);

    in = load(Source::Lp, "p :- not q.\nq :- not p.\n");
    CHECK(listing(in, solve(in)) == "2 models\nK: {q}\nK: {p}\n");

    in = load(Source::AelStrong, "[AEL]\n~L(true) | L(~p) | p\n");
    CHECK(solve(in).models.size() == 1);
    CHECK_THROWS_AS(load(Source::Lp, "-p."), UnsupportedFragmentError);
}

TEST_CASE("weak extensions report their generators", "[frontend][pipeline]") {
    const auto in = load(Source::DlWeak, "[D]\np : / p\n");
    const auto r = solve(in);
    REQUIRE(r.models.size() == 2);
    CHECK(listing(in, r) == "2 models\nK: {}  generators: {}\nK: {p}  generators: {p}\n");
}

TEST_CASE("enumeration cap from the environment", "[frontend]") {
    ::setenv("GK2DLP_ENUM_CAP", "3", 1);
    const auto caps = caps_from_env();
    ::unsetenv("GK2DLP_ENUM_CAP");
    CHECK(caps.oracle.modal_cap == 3);
    CHECK(caps.oracle.prop.atom_cap == 3);
    CHECK(caps_from_env().oracle.modal_cap == gk::OracleLimits{}.modal_cap);
    ::setenv("GK2DLP_ENUM_CAP", "many", 1);
    CHECK_THROWS_AS(caps_from_env(), Error);
    ::unsetenv("GK2DLP_ENUM_CAP");
}

TEST_CASE("fair-division instances", "[frontend][fair]") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto inst = gen_fair_division_instance(1, 1, seed);
        CHECK(inst.acceptable == std::vector<std::vector<std::uint32_t>>{{1}});
        CHECK(testing::brute_force_allocations(inst).size() == 1);
    }
    const auto a = gen_fair_division_instance(2, 2, 7);
    const auto b = gen_fair_division_instance(2, 2, 7);
    CHECK(instance_json(a) == instance_json(b));
    CHECK(print_dl(encode_fair_division(a)) == print_dl(encode_fair_division(b)));
    for (const auto& bundles : a.acceptable) {
        CHECK_FALSE(bundles.empty());
        for (auto x : bundles) CHECK((x >= 1 && x <= 3));
    }

    // The first outputs of splitmix64 seeded with 0.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("fair division: extensions are the acceptable allocations", "[frontend][fair]") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = gen_fair_division_instance(2, 2, seed);
        const auto text = print_dl(encode_fair_division(inst));
        const auto in = load(Source::Dl, text);
        const auto r = solve(in);
        std::vector<Allocation> got;
        for (const auto& m : r.models) got.push_back(allocation_of(inst, r.atoms, m));
        std::sort(got.begin(), got.end());
        CHECK(got == testing::brute_force_allocations(inst));
    }
}

TEST_CASE("command-line exit codes", "[frontend][cli]") {
    const auto gk = scratch_file("a.gk", "~A(~p) -> K(p)\n");
    const auto bad = scratch_file("bad.gk", "K(A(p))\n");
    const auto none = scratch_file("none.dl", "[D]\n: p / ~p\n");
    const auto big = scratch_file("big.gk", "K(p) | K(q) | A(r)\n");
    const auto dir = gk.parent_path();

    CHECK(run("translate --from gk --in " + gk.string() + " --out " + (dir / "a.lp").string() + " --map " +
              (dir / "a.map").string()) == 0);
    CHECK(std::filesystem::file_size(dir / "a.lp") > 0);
    CHECK(std::filesystem::file_size(dir / "a.map") > 0);
    CHECK(run("solve --from dl --in " + none.string()) == 0);
    CHECK(run("solve --from gk --in " + bad.string()) == 2);
    CHECK(run("solve --from gk --in " + gk.string() + " --no-such-flag") == 2);
    CHECK(run("solve --from gk --in " + gk.string() + " --solver-cmd false") == 3);
    CHECK(run("solve --from gk --in " + gk.string() + " --solver-cmd '" + kSolver + "'") == 0);
    CHECK(std::system(("GK2DLP_ENUM_CAP=2 " + kBinary + " oracle --from gk --in " + big.string() + " >/dev/null 2>&1").c_str()) != 0);
    CHECK(run("bench fair-division --agents 2 --goods 2 --seed 7 --out " + (dir / "fd.dl").string() +
              " --emit-instance " + (dir / "fd.json").string()) == 0);
    CHECK(run("selftest") == 0);
}
