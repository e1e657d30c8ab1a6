#pragma once

#include "gk2dlp/dlp.hpp"
#include "gk2dlp/gk.hpp"
#include "gk2dlp/names.hpp"
#include "gk2dlp/prop.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gk2dlp::translator {

using gk::GkTheory;
using prop::Formula;

/// Conjuncts of the candidate formula that pairs each K-/A-atom with
/// separate knowledge and assumption witnesses (global copies for soundness).
std::vector<Formula> phi_conjuncts(const GkTheory& T, TranslationNamespace& ns);
/// Conjuncts of the variant whose soundness and witnesses range over the
/// original vocabulary and respect knowledge and assumptions together.
std::vector<Formula> psi_conjuncts(const GkTheory& T, TranslationNamespace& ns);

Formula build_phi(const GkTheory& T, TranslationNamespace& ns);
Formula build_psi(const GkTheory& T, TranslationNamespace& ns);
/// build_phi with every atom except the a-atoms replaced by its star copy.
Formula build_tstar(const GkTheory& T, TranslationNamespace& ns);

/// Nested-expression form of a formula: NNF, `&` as `,`, `|` as `;`.
dlp::Expr to_nested(const Formula& f);
dlp::Expr tr_ne(const GkTheory& T, TranslationNamespace& ns);

struct TranslateOptions {
    prop::CnfMode cnf = prop::CnfMode::Distributive;
    /// Emit rule (1) as the single nested constraint instead of one constraint per clause.
    bool nested_constraint = false;
    prop::CnfOptions cnf_options{};
};

struct TranslationOutput {
    dlp::Program program;
    /// Rule group (1..14) of each program rule.
    std::vector<std::uint8_t> group;
    TranslationNamespace ns;
    gk::ModalAtoms atoms;
    std::vector<std::string> k_names; // parallel to atoms.k
    std::vector<std::string> a_names; // parallel to atoms.a
    std::string u;
    std::string v;
    /// Atoms forced by u (rules 9 and 10) and by v (rule 13).
    std::vector<std::string> saturated_u;
    std::vector<std::string> saturated_v;
};

TranslationOutput tr_lp(const GkTheory& T, const TranslateOptions& options = {});

/// K-/A-atom assignment read off an answer set; MalformedModelError without u and v.
gk::GkModel decode(const dlp::LiteralSet& answer_set, const TranslationOutput& out);

/// Decoded, sorted and deduplicated GK models of the translated program
/// via the internal solver.
std::vector<gk::GkModel> solve_internal(const TranslationOutput& out);

} // namespace gk2dlp::translator
