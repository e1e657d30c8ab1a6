#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gk2dlp::prop {

enum class Op : std::uint8_t { False, True, Atom, Not, And, Or };

/// Immutable propositional formula over named atoms.
///
/// Values share structure; copying is cheap. Implication and
/// biconditional are not node kinds: `implies` builds `~f | g`.
/// Equality and ordering are structural.
class Formula {
public:
    Formula(); // verum

    static Formula verum();
    static Formula falsum();
    static Formula atom(std::string name);

    Op op() const noexcept;
    const std::string& name() const;   // Atom only
    const Formula& child() const;      // Not only
    const Formula& lhs() const;        // And / Or
    const Formula& rhs() const;        // And / Or

    bool is_atom() const noexcept { return op() == Op::Atom; }
    bool is_literal() const noexcept;
    bool is_constant() const noexcept { return op() == Op::True || op() == Op::False; }

    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;

    friend bool operator==(const Formula& a, const Formula& b) noexcept;
    friend bool operator<(const Formula& a, const Formula& b) noexcept { return compare(a, b) < 0; }
    static int compare(const Formula& a, const Formula& b) noexcept;

    friend Formula neg(Formula f);
    friend Formula conj(Formula f, Formula g);
    friend Formula disj(Formula f, Formula g);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

Formula neg(Formula f);
Formula conj(Formula f, Formula g);
Formula disj(Formula f, Formula g);
inline Formula implies(Formula f, Formula g) { return disj(neg(std::move(f)), std::move(g)); }
inline Formula iff(const Formula& f, const Formula& g) { return conj(implies(f, g), implies(g, f)); }

/// Left fold with `conj`; the empty conjunction is verum.
Formula conjoin(std::span<const Formula> parts);
/// Left fold with `disj`; the empty disjunction is falsum.
Formula disjoin(std::span<const Formula> parts);

/// Atoms in first-occurrence order (left to right), without duplicates.
std::vector<std::string> atoms(const Formula& f);
/// Appends atoms of `f` not yet in `out`.
void collect_atoms(const Formula& f, std::vector<std::string>& out);

/// Text form in the shared input grammar, with minimal parentheses.
std::string to_string(const Formula& f);

bool is_valid_atom_name(const std::string& name) noexcept;

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

} // namespace gk2dlp::prop
