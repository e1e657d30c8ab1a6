#include "gk2dlp/asp.hpp"
#include "gk2dlp/error.hpp"
#include "gk2dlp/fair_division.hpp"
#include "gk2dlp/frontend.hpp"
#include "gk2dlp/parse.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace gk2dlp;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream f(path);
    if (!f) throw Error("cannot read `" + path + "`");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    f << text;
    if (!f) throw Error("cannot write `" + path + "`");
}

struct Common {
    std::string from = "gk";
    std::string in;
    std::string cnf = "distributive";
    bool nested = false;

    void add(CLI::App* cmd, bool translation) {
        cmd->add_option("--from", from, "Input language")
            ->check(CLI::IsMember({"gk", "dl", "dl-weak", "ael", "ael-strong", "ucl", "lp"}));
        cmd->add_option("--in", in, "Input file (- for stdin)")->required();
        if (!translation) return;
        cmd->add_option("--cnf", cnf, "Clause form")->check(CLI::IsMember({"distributive", "structural"}));
        cmd->add_flag("--nested-constraint", nested, "Emit the consistency check as one nested constraint");
    }

    frontend::Input load() const { return frontend::load(*frontend::parse_source(from), read_input(in)); }

    translator::TranslateOptions options() const {
        translator::TranslateOptions o;
        o.cnf = cnf == "structural" ? prop::CnfMode::Structural : prop::CnfMode::Distributive;
        o.nested_constraint = nested;
        return o;
    }
};

int lp_solve() {
    const auto P = frontend::parse_lp(read_input("-"));
    const auto sets = dlp::solve(P);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::cout << "Answer: " << i + 1 << "\n";
        std::string line;
        for (const auto& l : sets[i]) line += (line.empty() ? "" : " ") + dlp::to_string(l);
        std::cout << line << "\n";
    }
    std::cout << (sets.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << "\n";
    return sets.empty() ? 20 : 10;
}

int selftest() {
    using gk::GkFormula;
    const auto p = prop::Formula::atom("p");
    const auto np = prop::neg(p);
    struct Case {
        const char* name;
        gk::GkTheory T;
        std::size_t expected;
    };
    const std::vector<Case> cases{
        {"{~A(~p) -> K(p)}", {gk::implies(gk::neg(GkFormula::A(np)), GkFormula::K(p))}, 1},
        {"{~A(~p) -> K(p), K(~p)}", {gk::implies(gk::neg(GkFormula::A(np)), GkFormula::K(p)), GkFormula::K(np)}, 1},
        {"{A(p) -> K(p)}", {gk::implies(GkFormula::A(p), GkFormula::K(p))}, 2},
        {"{~A(p) -> K(p)}", {gk::implies(gk::neg(GkFormula::A(p)), GkFormula::K(p))}, 0},
    };
    bool ok = true;
    for (const auto& c : cases) {
        frontend::Input in{frontend::Source::Gk, c.T, std::nullopt};
        const auto expected = frontend::oracle(in);
        bool pass = expected.models.size() == c.expected;
        for (auto mode : {prop::CnfMode::Distributive, prop::CnfMode::Structural}) {
            frontend::SolveOptions o;
            o.translate.cnf = mode;
            pass = pass && frontend::solve(in, o).models == expected.models;
        }
        std::cout << (pass ? "PASS " : "FAIL ") << c.name << ": " << expected.models.size() << " model(s)\n";
        ok = ok && pass;
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Translate nonmonotonic theories into disjunctive logic programs"};
    app.require_subcommand(1);

    Common tr_args;
    std::string out_path, map_path;
    auto* translate = app.add_subcommand("translate", "Write the disjunctive program and its atom map");
    tr_args.add(translate, true);
    translate->add_option("--out", out_path, "Program file (- for stdout)")->required();
    translate->add_option("--map", map_path, "Atom map file");

    Common solve_args;
    std::string solver = "internal", solver_cmd;
    auto* solve = app.add_subcommand("solve", "Translate, solve and list the models");
    solve_args.add(solve, true);
    solve->add_option("--solver", solver, "Solver")->check(CLI::IsMember({"internal"}));
    solve->add_option("--solver-cmd", solver_cmd, "External solver command reading the program on stdin");

    Common oracle_args;
    auto* oracle = app.add_subcommand("oracle", "List the models by brute-force enumeration");
    oracle_args.add(oracle, false);

    auto* bench = app.add_subcommand("bench", "Benchmark instance generators");
    bench->require_subcommand(1);
    std::size_t agents = 2, goods = 2;
    std::uint64_t seed = 0;
    std::string bench_out, instance_out;
    auto* fair = bench->add_subcommand("fair-division", "Random fair-division instance as a default theory");
    fair->add_option("--agents", agents, "Number of agents")->required()->check(CLI::PositiveNumber);
    fair->add_option("--goods", goods, "Number of goods")->required()->check(CLI::Range(1, 31));
    fair->add_option("--seed", seed, "PRNG seed")->required();
    fair->add_option("--out", bench_out, "Default theory file (- for stdout)")->required();
    fair->add_option("--emit-instance", instance_out, "Instance as JSON");

    auto* self = app.add_subcommand("selftest", "Check the built-in golden cases");
    auto* lp = app.add_subcommand("lp-solve", "Solve a ground disjunctive program from stdin, clingo-style output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*translate) {
            const auto out = translator::tr_lp(tr_args.load().theory, tr_args.options());
            const auto text = frontend::emit_asp(out);
            write_file(out_path, text.program);
            if (!map_path.empty()) write_file(map_path, text.map);
            std::cout << out.program.rules.size() << " rules\n";
        } else if (*solve) {
            const auto in = solve_args.load();
            frontend::SolveOptions o;
            o.translate = solve_args.options();
            if (!solver_cmd.empty()) o.solver_cmd = solver_cmd;
            std::cout << frontend::listing(in, frontend::solve(in, o));
        } else if (*oracle) {
            const auto caps = frontend::caps_from_env();
            const auto in = oracle_args.load();
            std::cout << frontend::listing(in, frontend::oracle(in, caps));
        } else if (*fair) {
            const auto inst = frontend::gen_fair_division_instance(agents, goods, seed);
            write_file(bench_out, frontend::print_dl(frontend::encode_fair_division(inst)));
            if (!instance_out.empty()) write_file(instance_out, frontend::instance_json(inst));
        } else if (*self) {
            return selftest();
        } else if (*lp) {
            return lp_solve();
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedFragmentError& e) {
        std::cerr << "unsupported input: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const AdapterError& e) {
        std::cerr << "solver output error: " << e.what() << "\n";
        return 3;
    } catch (const EnumerationLimitError& e) {
        std::cerr << "enumeration limit: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
