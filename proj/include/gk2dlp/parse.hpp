#pragma once

#include "gk2dlp/dlp.hpp"
#include "gk2dlp/embed.hpp"
#include "gk2dlp/gk.hpp"
#include "gk2dlp/prop.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gk2dlp::frontend {

// All parsers throw ParseError with 1-based line:column positions.

prop::Formula parse_formula(std::string_view text);

/// One formula per line; `#` comments and blank lines ignored.
gk::GkTheory parse_gk(std::string_view text);

/// `[W]` formulas, then `[D]` defaults `pre : j1, j2 / cons`.
embed::DefaultTheory parse_dl(std::string_view text);

/// `[AEL]` then one normal-form sentence per line.
std::vector<embed::AelSentence> parse_ael(std::string_view text);

/// Optional `[ATOMS] p q r` line, then one formula per line using `C(...)`.
embed::UclTheory parse_ucl(std::string_view text);

/// Rules `h1 | h2 :- b1, not b2, not not b3.`, with `-p` for classical negation,
/// `;` as an alternative head separator, `#true`/`#false` and `%` comments.
dlp::Program parse_lp(std::string_view text);

std::string print_gk(const gk::GkTheory& T);
std::string print_dl(const embed::DefaultTheory& dt);
std::string print_ael(const std::vector<embed::AelSentence>& sentences);
std::string print_ucl(const embed::UclTheory& u);
/// Flat rules in the external solver syntax.
std::string print_lp(const std::vector<dlp::FlatRule>& rules);

} // namespace gk2dlp::frontend
