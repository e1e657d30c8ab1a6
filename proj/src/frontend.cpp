#include "gk2dlp/frontend.hpp"

#include "gk2dlp/error.hpp"
#include "gk2dlp/parse.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace gk2dlp::frontend {

namespace {

constexpr std::array<std::pair<std::string_view, Source>, 7> kSources{{
    {"gk", Source::Gk},
    {"dl", Source::Dl},
    {"dl-weak", Source::DlWeak},
    {"ael", Source::Ael},
    {"ael-strong", Source::AelStrong},
    {"ucl", Source::Ucl},
    {"lp", Source::Lp},
}};

} // namespace

std::optional<Source> parse_source(std::string_view name) {
    for (const auto& [n, s] : kSources)
        if (n == name) return s;
    return std::nullopt;
}

const char* source_name(Source s) noexcept {
    for (const auto& [n, src] : kSources)
        if (src == s) return n.data();
    return "?";
}

Input load(Source source, std::string_view text) {
    Input in;
    in.source = source;
    switch (source) {
    case Source::Gk: in.theory = parse_gk(text); break;
    case Source::Dl:
    case Source::DlWeak:
        in.defaults = parse_dl(text);
        in.theory = embed::embed_default(*in.defaults, source == Source::Dl ? embed::DefaultSemantics::Extension
                                                                            : embed::DefaultSemantics::Weak);
        break;
    case Source::Ael:
    case Source::AelStrong:
        in.theory = embed::embed_ael(parse_ael(text), source == Source::Ael ? embed::AelSemantics::Expansion
                                                                            : embed::AelSemantics::Strong);
        break;
    case Source::Ucl: in.theory = embed::embed_ucl(parse_ucl(text)); break;
    case Source::Lp: in.theory = embed::embed_dlp(embed::simple_rules(parse_lp(text))); break;
    }
    return in;
}

AspText emit_asp(const translator::TranslationOutput& out) {
    AspText t;
    t.program = print_lp(dlp::flatten(out.program));
    for (const auto& e : out.ns.entries()) t.map += e.name + "\t" + kind_name(e.kind) + "\t" + e.text + "\n";
    return t;
}

namespace {

dlp::Literal solver_literal(const std::string& tok) {
    const bool negative = !tok.empty() && tok[0] == '-';
    std::string atom = negative ? tok.substr(1) : tok;
    if (!prop::is_valid_atom_name(atom)) throw AdapterError("unexpected token `" + tok + "` in solver output");
    return negative ? dlp::negl(std::move(atom)) : dlp::pos(std::move(atom));
}

dlp::LiteralSet witness(const std::string& line) {
    std::istringstream in(line);
    dlp::LiteralSet s;
    for (std::string tok; in >> tok;) s.insert(solver_literal(tok));
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

} // namespace

std::vector<dlp::LiteralSet> parse_solver_output(std::string_view text) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    for (std::string l; std::getline(in, l);) lines.push_back(trim(l));

    const bool clingo = std::any_of(lines.begin(), lines.end(), [](const auto& l) { return l.rfind("Answer:", 0) == 0; });
    std::vector<dlp::LiteralSet> out;
    if (clingo) {
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (lines[i].rfind("Answer:", 0) != 0) continue;
            if (i + 1 >= lines.size()) throw AdapterError("solver output ends after `" + lines[i] + "`");
            out.push_back(witness(lines[++i]));
        }
    } else if (std::find(lines.begin(), lines.end(), "UNSATISFIABLE") == lines.end()) {
        for (const auto& l : lines) {
            if (l.empty() || l == "SATISFIABLE" || l == "UNKNOWN") continue;
            out.push_back(witness(l));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<dlp::LiteralSet> run_external(const std::string& program_text, const std::string& command) {
    char path[] = "/tmp/gk2dlp-XXXXXX";
    const int fd = mkstemp(path);
    if (fd < 0) throw SolverError("cannot create a temporary file for the solver input");
    close(fd);
    struct Cleanup {
        const char* p;
        ~Cleanup() { std::remove(p); }
    } cleanup{path};
    {
        std::ofstream f(path);
        f << program_text;
        if (!f) throw SolverError("cannot write the solver input");
    }

    const std::string cmd = command + " < " + path;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw SolverError("cannot start `" + command + "`");
    std::string output;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) output.append(buf.data(), n);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0 && code != 10 && code != 20 && code != 30)
        throw SolverError("`" + command + "` exited with status " + std::to_string(code));
    return parse_solver_output(output);
}

Caps caps_from_env() {
    Caps caps;
    const char* env = std::getenv("GK2DLP_ENUM_CAP");
    if (!env || !*env) return caps;
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (*end != '\0' || n == 0) throw Error(std::string("GK2DLP_ENUM_CAP must be a positive integer, got `") + env + "`");
    caps.oracle.modal_cap = n;
    caps.oracle.prop.atom_cap = n;
    caps.extensions.formula_cap = n;
    caps.extensions.prop.atom_cap = n;
    return caps;
}

Result solve(const Input& in, const SolveOptions& options) {
    const auto out = translator::tr_lp(in.theory, options.translate);
    Result r{out.atoms, {}};
    if (!options.solver_cmd) {
        r.models = translator::solve_internal(out);
        return r;
    }
    for (const auto& s : run_external(emit_asp(out).program, *options.solver_cmd))
        r.models.push_back(translator::decode(s, out));
    std::sort(r.models.begin(), r.models.end());
    r.models.erase(std::unique(r.models.begin(), r.models.end()), r.models.end());
    return r;
}

Result oracle(const Input& in, const Caps& caps) {
    return {gk::modal_atoms(in.theory), gk::gk_models_oracle(in.theory, caps.oracle)};
}

std::vector<std::size_t> generating_defaults(const Input& in, const gk::ModalAtoms& atoms, const gk::GkModel& m) {
    std::vector<std::size_t> out;
    if (!in.defaults) return out;
    auto holds = [&](const std::vector<prop::Formula>& args, const std::vector<bool>& values, const prop::Formula& f) {
        const auto it = std::find(args.begin(), args.end(), f);
        if (it == args.end()) throw Error("modal atom missing from the embedded theory: " + prop::to_string(f));
        return values[static_cast<std::size_t>(it - args.begin())];
    };
    for (std::size_t i = 0; i < in.defaults->D.size(); ++i) {
        const auto& d = in.defaults->D[i];
        bool applies = in.source == Source::Dl ? holds(atoms.k, m.k, d.prerequisite) : holds(atoms.a, m.a, d.prerequisite);
        for (const auto& j : d.justifications) applies = applies && !holds(atoms.a, m.a, prop::neg(j));
        if (applies) out.push_back(i);
    }
    return out;
}

std::string listing(const Input& in, const Result& r) {
    std::string out = std::to_string(r.models.size()) + (r.models.size() == 1 ? " model\n" : " models\n");
    for (const auto& m : r.models) {
        out += gk::describe(m, r.atoms);
        if (in.defaults) {
            out += "  generators: {";
            bool first = true;
            for (auto i : generating_defaults(in, r.atoms, m)) {
                out += (first ? "" : ", ") + prop::to_string(in.defaults->D[i].consequent);
                first = false;
            }
            out += "}";
        }
        out += "\n";
    }
    return out;
}

} // namespace gk2dlp::frontend
