#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace gk2dlp::dlp {

/// Atom or classically negated atom.
struct Literal {
    std::string atom;
    bool positive = true;

    Literal complement() const { return {atom, !positive}; }
    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

Literal pos(std::string atom);
Literal negl(std::string atom);
/// `p` or `-p`.
std::string to_string(const Literal& l);

using LiteralSet = std::set<Literal>;

std::string to_string(const LiteralSet& s);

enum class ExprOp : std::uint8_t { Top, Bot, Lit, Not, Conj, Disj };

/// Nested expression: literals, top, bottom, `not`, `,` and `;`.
class Expr {
public:
    Expr(); // top

    static Expr top();
    static Expr bot();
    static Expr lit(Literal l);
    static Expr not_(Expr e);
    static Expr conj(Expr a, Expr b);
    static Expr disj(Expr a, Expr b);
    /// Left folds; empty conjunction is top, empty disjunction is bottom.
    static Expr conj(const std::vector<Expr>& parts);
    static Expr disj(const std::vector<Expr>& parts);

    ExprOp op() const noexcept;
    const Literal& literal() const;
    const Expr& child() const;
    const Expr& lhs() const;
    const Expr& rhs() const;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// e.g. `(p ; not -q), r`.
std::string to_string(const Expr& e);

struct Rule {
    Expr head;
    Expr body;
    friend bool operator==(const Rule&, const Rule&) = default;
};

std::string to_string(const Rule& r);

struct Program {
    std::vector<Rule> rules;
    /// Declared atoms; atoms occurring in rules are always included as well.
    std::vector<std::string> universe;
};

/// Declared universe followed by rule atoms, first occurrence order.
std::vector<std::string> atoms(const Program& P);

bool satisfies(const LiteralSet& S, const Expr& e);
bool satisfies(const LiteralSet& S, const Rule& r);
bool satisfies(const LiteralSet& S, const Program& P);

/// Replaces each maximal `not F` by bottom if S satisfies F, else by top.
Program reduct(const Program& P, const LiteralSet& S);

struct Limits {
    /// Literals of interest (two per atom).
    std::size_t literal_cap = 20;
};

/// Minimal consistent literal sets satisfying the reduct of P relative to S.
std::vector<LiteralSet> gamma(const Program& P, const LiteralSet& S, const Limits& limits = {});

/// Brute-force reference: every consistent S with S in gamma(P, S). Sorted.
std::vector<LiteralSet> answer_sets(const Program& P, const Limits& limits = {});

/// Body element: `l` (nots = 0), `not l` (1) or `not not l` (2).
struct BodyLiteral {
    Literal lit;
    std::uint8_t nots = 0;
    friend bool operator==(const BodyLiteral&, const BodyLiteral&) = default;
    friend auto operator<=>(const BodyLiteral&, const BodyLiteral&) = default;
};

/// Disjunctive rule with a literal-disjunction head and a flat body.
struct FlatRule {
    std::vector<Literal> head;
    std::vector<BodyLiteral> body;
    friend bool operator==(const FlatRule&, const FlatRule&) = default;
};

Rule to_rule(const FlatRule& r);
std::string to_string(const FlatRule& r);

/// Rewrites every rule into disjunctive form; preserves answer sets.
Program normalize(const Program& P);
/// Flat view of a program; normalizes rules that are not already flat.
std::vector<FlatRule> flatten(const Program& P);
/// Flat view of one rule, or nothing when it is not in disjunctive form.
bool as_flat(const Rule& r, FlatRule& out);

} // namespace gk2dlp::dlp
