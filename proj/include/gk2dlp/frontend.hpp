#pragma once

#include "gk2dlp/dlp.hpp"
#include "gk2dlp/embed.hpp"
#include "gk2dlp/gk.hpp"
#include "gk2dlp/translator.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gk2dlp::frontend {

enum class Source { Gk, Dl, DlWeak, Ael, AelStrong, Ucl, Lp };

/// `gk`, `dl`, `dl-weak`, `ael`, `ael-strong`, `ucl`, `lp`; nullopt otherwise.
std::optional<Source> parse_source(std::string_view name);
const char* source_name(Source s) noexcept;

/// Parsed input together with its GK embedding.
struct Input {
    Source source = Source::Gk;
    gk::GkTheory theory;
    std::optional<embed::DefaultTheory> defaults; // dl sources
};

Input load(Source source, std::string_view text);

struct AspText {
    std::string program;
    /// `name<TAB>kind<TAB>text` per atom of the translation, registration order.
    std::string map;
};

AspText emit_asp(const translator::TranslationOutput& out);

/// Answer sets from solver output: clingo-style `Answer: N` blocks, or one
/// space-separated literal set per line. AdapterError on anything else.
std::vector<dlp::LiteralSet> parse_solver_output(std::string_view text);

/// Runs `command` with `program_text` on standard input. Exit codes 0, 10, 20
/// and 30 are accepted; anything else is a SolverError.
std::vector<dlp::LiteralSet> run_external(const std::string& program_text, const std::string& command);

struct Caps {
    gk::OracleLimits oracle{};
    embed::ExtensionLimits extensions{};
};

/// Defaults, overridden by `GK2DLP_ENUM_CAP` (one number for every enumeration cap).
Caps caps_from_env();

struct SolveOptions {
    translator::TranslateOptions translate{};
    /// External solver command; internal solver when absent.
    std::optional<std::string> solver_cmd;
};

struct Result {
    gk::ModalAtoms atoms;
    std::vector<gk::GkModel> models; // sorted
};

Result solve(const Input& in, const SolveOptions& options = {});
Result oracle(const Input& in, const Caps& caps = {});

/// Indices of the defaults whose antecedent holds in `m` (dl sources only).
std::vector<std::size_t> generating_defaults(const Input& in, const gk::ModalAtoms& atoms, const gk::GkModel& m);

/// `N models` followed by one `K: {...}` line per model; dl sources add the
/// generating consequents.
std::string listing(const Input& in, const Result& r);

} // namespace gk2dlp::frontend
