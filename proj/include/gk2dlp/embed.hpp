#pragma once

#include "gk2dlp/dlp.hpp"
#include "gk2dlp/gk.hpp"
#include "gk2dlp/prop.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gk2dlp::embed {

using gk::GkTheory;
using prop::Formula;

struct Default {
    Formula prerequisite = Formula::verum();
    std::vector<Formula> justifications;
    Formula consequent;
    friend bool operator==(const Default&, const Default&) = default;
};

struct DefaultTheory {
    std::vector<Formula> W;
    std::vector<Default> D;
    friend bool operator==(const DefaultTheory&, const DefaultTheory&) = default;
};

enum class DefaultSemantics { Extension, Weak };

/// W-formulas first, then defaults, in input order.
GkTheory embed_default(const DefaultTheory& dt, DefaultSemantics semantics);

/// Normal-form sentence `~L(neg_l) | L(pos_l1) | ... | objective`.
struct AelSentence {
    std::optional<Formula> neg_l;
    std::vector<Formula> pos_l;
    std::optional<Formula> objective; // absent = false
    friend bool operator==(const AelSentence&, const AelSentence&) = default;
};

enum class AelSemantics { Expansion, Strong };

GkTheory embed_ael(const std::vector<AelSentence>& sentences, AelSemantics semantics);

/// Default logic to normal-form autoepistemic sentences; W-formulas become objective sentences.
std::vector<AelSentence> konolige(const DefaultTheory& dt);

enum class UclOp : std::uint8_t { False, True, Atom, C, Not, And, Or };

struct UclFormula {
    UclOp op = UclOp::True;
    std::string atom;             // Atom
    Formula arg;                  // C
    std::vector<UclFormula> kids; // Not: 1, And/Or: 2

    static UclFormula atom_of(std::string p) { return {UclOp::Atom, std::move(p), {}, {}}; }
    static UclFormula c(Formula f) { return {UclOp::C, {}, std::move(f), {}}; }
    static UclFormula neg(UclFormula f) { return {UclOp::Not, {}, {}, {std::move(f)}}; }
    static UclFormula conj(UclFormula f, UclFormula g) { return {UclOp::And, {}, {}, {std::move(f), std::move(g)}}; }
    static UclFormula disj(UclFormula f, UclFormula g) { return {UclOp::Or, {}, {}, {std::move(f), std::move(g)}}; }
    static UclFormula implies(UclFormula f, UclFormula g) { return disj(neg(std::move(f)), std::move(g)); }

    friend bool operator==(const UclFormula&, const UclFormula&) = default;
};

/// Text form with `C(...)`, same conventions as the propositional printer.
std::string to_string(const UclFormula& f);

struct UclTheory {
    std::vector<UclFormula> formulas;
    /// Declared atoms; when empty, the atoms occurring in the formulas.
    std::vector<std::string> universe;
    friend bool operator==(const UclTheory&, const UclTheory&) = default;
};

std::vector<std::string> atoms(const UclTheory& u);

/// C becomes K, atoms outside C get A, and `A(p) | A(~p)` is appended per universe atom.
GkTheory embed_ucl(const UclTheory& u);

/// `p1 | ... | pk :- q1, ..., not r1, ...` over plain atoms.
struct SimpleRule {
    std::vector<std::string> head;
    std::vector<std::string> pos;
    std::vector<std::string> neg;
    friend bool operator==(const SimpleRule&, const SimpleRule&) = default;
};

/// Plain view of a program; UnsupportedFragmentError for classical negation,
/// nested expressions or `not not`.
std::vector<SimpleRule> simple_rules(const dlp::Program& P);
dlp::Program to_program(const std::vector<SimpleRule>& rules);

GkTheory embed_dlp(const std::vector<SimpleRule>& rules);

/// Extension of a default theory, identified by the defaults whose
/// consequents generate it together with W.
struct Extension {
    std::vector<std::size_t> generators; // indices into D, ascending
    std::vector<Formula> basis;          // W followed by generating consequents
    bool consistent = true;
};

struct ExtensionLimits {
    std::size_t formula_cap = 12;
    prop::EnumerationLimits prop{};
};

/// Reiter extensions by guessing generating defaults and checking the fixpoint.
/// Deduplicated by logical equivalence, sorted by generators.
std::vector<Extension> default_extensions_oracle(const DefaultTheory& dt, const ExtensionLimits& limits = {});

/// Models of a formula set over `universe`, as a sorted list of assignment indices
/// (bit i = atom i). Two sets are logically equivalent iff their keys agree.
std::vector<std::uint64_t> theory_key(const std::vector<Formula>& formulas, const std::vector<std::string>& universe,
                                      const prop::EnumerationLimits& limits = {});

/// All atoms of a default theory, first occurrence order.
std::vector<std::string> atoms(const DefaultTheory& dt);

} // namespace gk2dlp::embed
