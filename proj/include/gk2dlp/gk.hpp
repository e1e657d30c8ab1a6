#pragma once

#include "gk2dlp/formula.hpp"
#include "gk2dlp/names.hpp"
#include "gk2dlp/prop.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace gk2dlp::gk {

using prop::Formula;

enum class GkOp : std::uint8_t { False, True, K, A, Not, And, Or };

/// Pure GK formula: a boolean combination of K- and A-atoms over propositional arguments.
class GkFormula {
public:
    GkFormula(); // verum

    static GkFormula verum();
    static GkFormula falsum();
    static GkFormula K(Formula phi);
    static GkFormula A(Formula phi);

    GkOp op() const noexcept;
    const Formula& arg() const;       // K / A
    const GkFormula& child() const;   // Not
    const GkFormula& lhs() const;     // And / Or
    const GkFormula& rhs() const;     // And / Or

    friend bool operator==(const GkFormula& a, const GkFormula& b) noexcept;

    friend GkFormula neg(GkFormula f);
    friend GkFormula conj(GkFormula f, GkFormula g);
    friend GkFormula disj(GkFormula f, GkFormula g);

private:
    struct Node;
    explicit GkFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

GkFormula neg(GkFormula f);
GkFormula conj(GkFormula f, GkFormula g);
GkFormula disj(GkFormula f, GkFormula g);
inline GkFormula implies(GkFormula f, GkFormula g) { return disj(neg(std::move(f)), std::move(g)); }
GkFormula conjoin(const std::vector<GkFormula>& parts);
GkFormula disjoin(const std::vector<GkFormula>& parts);

/// Text form, e.g. `~A(~p) | K(p)`.
std::string to_string(const GkFormula& f);

using GkTheory = std::vector<GkFormula>;

struct ModalAtoms {
    std::vector<Formula> k; // AtomK in first-occurrence order
    std::vector<Formula> a; // AtomA in first-occurrence order
};

ModalAtoms modal_atoms(const GkTheory& T);

/// Base atoms of all modal arguments, first-occurrence order.
std::vector<std::string> base_atoms(const GkTheory& T);

/// Propositionalization of one formula / of the whole theory (conjunction, verum when empty).
/// Registers k- and a-atoms in `ns`.
Formula tr_p(const GkFormula& F, TranslationNamespace& ns);
Formula tr_p(const GkTheory& T, TranslationNamespace& ns);

/// GK model represented by its K-/A-atom truth assignment. `k` and `a` are
/// parallel to AtomK/AtomA of the theory it belongs to.
struct GkModel {
    std::vector<bool> k;
    std::vector<bool> a;

    friend bool operator==(const GkModel&, const GkModel&) = default;
    friend auto operator<=>(const GkModel&, const GkModel&) = default;
};

std::vector<Formula> known(const GkModel& m, const ModalAtoms& atoms);
std::vector<Formula> assumed(const GkModel& m, const ModalAtoms& atoms);

/// `K: {f1, f2}` listing the true K-atom arguments in AtomK order.
std::string describe(const GkModel& m, const ModalAtoms& atoms);

/// Re-checks consistency and closure: each K-/A-atom is true iff the known set entails it.
bool closure_holds(const GkModel& m, const ModalAtoms& atoms, const prop::EnumerationLimits& limits = {});

struct OracleLimits {
    std::size_t modal_cap = 12;
    prop::EnumerationLimits prop{};
};

/// All GK models with consistent knowledge, by enumerating K-/A-atom assignments.
/// Sorted, deduplicated.
std::vector<GkModel> gk_models_oracle(const GkTheory& T, const OracleLimits& limits = {});

} // namespace gk2dlp::gk
