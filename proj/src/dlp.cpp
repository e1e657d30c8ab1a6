#include "gk2dlp/dlp.hpp"

#include "gk2dlp/error.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace gk2dlp::dlp {

Literal pos(std::string atom) { return {std::move(atom), true}; }
Literal negl(std::string atom) { return {std::move(atom), false}; }

std::string to_string(const Literal& l) { return l.positive ? l.atom : "-" + l.atom; }

std::string to_string(const LiteralSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : s) {
        if (!first) out += ", ";
        first = false;
        out += to_string(l);
    }
    return out + "}";
}

struct Expr::Node {
    ExprOp op;
    Literal lit;
    Expr a;
    Expr b;
};

Expr::Expr() : Expr(top()) {}

Expr Expr::top() {
    static const Expr t(std::make_shared<Node>(Node{ExprOp::Top, {}, Expr(nullptr), Expr(nullptr)}));
    return t;
}

Expr Expr::bot() {
    static const Expr f(std::make_shared<Node>(Node{ExprOp::Bot, {}, Expr(nullptr), Expr(nullptr)}));
    return f;
}

Expr Expr::lit(Literal l) {
    return Expr(std::make_shared<Node>(Node{ExprOp::Lit, std::move(l), Expr(nullptr), Expr(nullptr)}));
}

Expr Expr::not_(Expr e) {
    return Expr(std::make_shared<Node>(Node{ExprOp::Not, {}, std::move(e), Expr(nullptr)}));
}

Expr Expr::conj(Expr a, Expr b) {
    return Expr(std::make_shared<Node>(Node{ExprOp::Conj, {}, std::move(a), std::move(b)}));
}

Expr Expr::disj(Expr a, Expr b) {
    return Expr(std::make_shared<Node>(Node{ExprOp::Disj, {}, std::move(a), std::move(b)}));
}

Expr Expr::conj(const std::vector<Expr>& parts) {
    if (parts.empty()) return top();
    Expr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

Expr Expr::disj(const std::vector<Expr>& parts) {
    if (parts.empty()) return bot();
    Expr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

ExprOp Expr::op() const noexcept { return node_->op; }
const Literal& Expr::literal() const { return node_->lit; }
const Expr& Expr::child() const { return node_->a; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }

bool operator==(const Expr& a, const Expr& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case ExprOp::Top:
    case ExprOp::Bot: return true;
    case ExprOp::Lit: return a.literal() == b.literal();
    case ExprOp::Not: return a.child() == b.child();
    case ExprOp::Conj:
    case ExprOp::Disj: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

namespace {

int strength(const Expr& e) {
    switch (e.op()) {
    case ExprOp::Disj: return 1;
    case ExprOp::Conj: return 2;
    default: return 3;
    }
}

void print(const Expr& e, std::string& out) {
    switch (e.op()) {
    case ExprOp::Top: out += "#true"; return;
    case ExprOp::Bot: out += "#false"; return;
    case ExprOp::Lit: out += to_string(e.literal()); return;
    case ExprOp::Not:
        out += "not ";
        if (strength(e.child()) < 3) out += '(';
        print(e.child(), out);
        if (strength(e.child()) < 3) out += ')';
        return;
    case ExprOp::Conj:
    case ExprOp::Disj: {
        const int s = strength(e);
        const bool pl = strength(e.lhs()) < s;
        const bool pr = strength(e.rhs()) <= s;
        if (pl) out += '(';
        print(e.lhs(), out);
        if (pl) out += ')';
        out += e.op() == ExprOp::Conj ? ", " : " ; ";
        if (pr) out += '(';
        print(e.rhs(), out);
        if (pr) out += ')';
        return;
    }
    }
}

void collect(const Expr& e, std::vector<std::string>& out) {
    switch (e.op()) {
    case ExprOp::Top:
    case ExprOp::Bot: return;
    case ExprOp::Lit:
        if (std::find(out.begin(), out.end(), e.literal().atom) == out.end()) out.push_back(e.literal().atom);
        return;
    case ExprOp::Not: collect(e.child(), out); return;
    case ExprOp::Conj:
    case ExprOp::Disj:
        collect(e.lhs(), out);
        collect(e.rhs(), out);
        return;
    }
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

std::string to_string(const Rule& r) {
    std::string out;
    if (r.head.op() != ExprOp::Bot) out += to_string(r.head);
    if (r.body.op() != ExprOp::Top) {
        out += out.empty() ? ":- " : " :- ";
        out += to_string(r.body);
    }
    return out + ".";
}

std::vector<std::string> atoms(const Program& P) {
    std::vector<std::string> out;
    for (const auto& p : P.universe) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    for (const auto& r : P.rules) {
        collect(r.head, out);
        collect(r.body, out);
    }
    return out;
}

bool satisfies(const LiteralSet& S, const Expr& e) {
    switch (e.op()) {
    case ExprOp::Top: return true;
    case ExprOp::Bot: return false;
    case ExprOp::Lit: return S.count(e.literal()) != 0;
    case ExprOp::Not: return !satisfies(S, e.child());
    case ExprOp::Conj: return satisfies(S, e.lhs()) && satisfies(S, e.rhs());
    case ExprOp::Disj: return satisfies(S, e.lhs()) || satisfies(S, e.rhs());
    }
    return false;
}

bool satisfies(const LiteralSet& S, const Rule& r) { return !satisfies(S, r.body) || satisfies(S, r.head); }

bool satisfies(const LiteralSet& S, const Program& P) {
    return std::all_of(P.rules.begin(), P.rules.end(), [&](const Rule& r) { return satisfies(S, r); });
}

namespace {

Expr reduct_expr(const Expr& e, const LiteralSet& S) {
    switch (e.op()) {
    case ExprOp::Top:
    case ExprOp::Bot:
    case ExprOp::Lit: return e;
    case ExprOp::Not: return satisfies(S, e.child()) ? Expr::bot() : Expr::top();
    case ExprOp::Conj: return Expr::conj(reduct_expr(e.lhs(), S), reduct_expr(e.rhs(), S));
    case ExprOp::Disj: return Expr::disj(reduct_expr(e.lhs(), S), reduct_expr(e.rhs(), S));
    }
    return e;
}

// Literal sets over n atoms as (positive mask, negative mask).
struct Masks {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
};

class Compiled {
public:
    Compiled(const Program& P, const std::vector<std::string>& atoms) {
        for (std::size_t i = 0; i < atoms.size(); ++i) index_.emplace(atoms[i], static_cast<int>(i));
        for (const auto& r : P.rules) rules_.push_back({compile(r.head), compile(r.body)});
    }

    /// T satisfies the reduct of the program relative to S.
    bool satisfies_reduct(Masks T, Masks S) const {
        for (const auto& [h, b] : rules_) {
            if (eval(b, T, S) && !eval(h, T, S)) return false;
        }
        return true;
    }

private:
    struct Node {
        ExprOp op;
        int lit = 0; // atom index, negative literal stored as ~index
        int a = -1;
        int b = -1;
    };

    int compile(const Expr& e) {
        Node n{e.op()};
        switch (e.op()) {
        case ExprOp::Top:
        case ExprOp::Bot: break;
        case ExprOp::Lit: {
            const int i = index_.at(e.literal().atom);
            n.lit = e.literal().positive ? i : ~i;
            break;
        }
        case ExprOp::Not: n.a = compile(e.child()); break;
        case ExprOp::Conj:
        case ExprOp::Disj:
            n.a = compile(e.lhs());
            n.b = compile(e.rhs());
            break;
        }
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size() - 1);
    }

    bool eval(int i, Masks T, Masks S) const {
        const Node& n = nodes_[static_cast<std::size_t>(i)];
        switch (n.op) {
        case ExprOp::Top: return true;
        case ExprOp::Bot: return false;
        case ExprOp::Lit:
            return n.lit >= 0 ? ((T.pos >> n.lit) & 1U) != 0 : ((T.neg >> ~n.lit) & 1U) != 0;
        case ExprOp::Not: return !eval(n.a, S, S);
        case ExprOp::Conj: return eval(n.a, T, S) && eval(n.b, T, S);
        case ExprOp::Disj: return eval(n.a, T, S) || eval(n.b, T, S);
        }
        return false;
    }

    std::unordered_map<std::string, int> index_;
    std::vector<Node> nodes_;
    std::vector<std::pair<int, int>> rules_;
};

std::vector<std::string> checked_atoms(const Program& P, const LiteralSet* S, const Limits& limits) {
    auto names = atoms(P);
    if (S != nullptr) {
        for (const auto& l : *S) {
            if (std::find(names.begin(), names.end(), l.atom) == names.end()) names.push_back(l.atom);
        }
    }
    if (2 * names.size() > limits.literal_cap || names.size() > 16) {
        throw EnumerationLimitError("answer-set enumeration: " + std::to_string(2 * names.size()) +
                                    " literals exceed the cap of " + std::to_string(limits.literal_cap));
    }
    return names;
}

// Calls f(masks) for every consistent literal set over n atoms.
template <class F>
void for_each_consistent(std::size_t n, F&& f) {
    std::vector<int> state(n, 0); // 0 absent, 1 positive, 2 negative
    while (true) {
        Masks m;
        for (std::size_t i = 0; i < n; ++i) {
            if (state[i] == 1) m.pos |= 1U << i;
            if (state[i] == 2) m.neg |= 1U << i;
        }
        f(m);
        std::size_t i = 0;
        while (i < n && state[i] == 2) state[i++] = 0;
        if (i == n) return;
        ++state[i];
    }
}

bool subset(Masks a, Masks b) { return (a.pos & ~b.pos) == 0 && (a.neg & ~b.neg) == 0; }

LiteralSet to_set(Masks m, const std::vector<std::string>& names) {
    LiteralSet s;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if ((m.pos >> i) & 1U) s.insert(pos(names[i]));
        if ((m.neg >> i) & 1U) s.insert(negl(names[i]));
    }
    return s;
}

Masks to_masks(const LiteralSet& s, const std::vector<std::string>& names) {
    Masks m;
    for (const auto& l : s) {
        const auto i = static_cast<unsigned>(std::find(names.begin(), names.end(), l.atom) - names.begin());
        (l.positive ? m.pos : m.neg) |= 1U << i;
    }
    return m;
}

} // namespace

Program reduct(const Program& P, const LiteralSet& S) {
    Program out;
    out.universe = P.universe;
    for (const auto& r : P.rules) out.rules.push_back({reduct_expr(r.head, S), reduct_expr(r.body, S)});
    return out;
}

std::vector<LiteralSet> gamma(const Program& P, const LiteralSet& S, const Limits& limits) {
    const auto names = checked_atoms(P, &S, limits);
    const Compiled c(P, names);
    const Masks s = to_masks(S, names);
    std::vector<Masks> sat;
    for_each_consistent(names.size(), [&](Masks t) {
        if (c.satisfies_reduct(t, s)) sat.push_back(t);
    });
    auto card = [](Masks m) { return std::popcount(m.pos) + std::popcount(m.neg); };
    std::stable_sort(sat.begin(), sat.end(), [&](Masks a, Masks b) { return card(a) < card(b); });
    std::vector<Masks> minimal;
    for (const auto& t : sat) {
        if (std::none_of(minimal.begin(), minimal.end(), [&](Masks m) { return subset(m, t); })) minimal.push_back(t);
    }
    std::vector<LiteralSet> out;
    for (const auto& m : minimal) out.push_back(to_set(m, names));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<LiteralSet> answer_sets(const Program& P, const Limits& limits) {
    const auto names = checked_atoms(P, nullptr, limits);
    const Compiled c(P, names);
    const std::size_t n = names.size();
    std::vector<LiteralSet> out;
    for_each_consistent(n, [&](Masks s) {
        if (!c.satisfies_reduct(s, s)) return;
        // Any proper subset satisfying the reduct refutes minimality.
        const std::uint64_t all = static_cast<std::uint64_t>(s.pos) | (static_cast<std::uint64_t>(s.neg) << n);
        for (std::uint64_t sub = (all - 1) & all;; sub = (sub - 1) & all) {
            if (sub == all) break;
            const Masks t{static_cast<std::uint32_t>(sub & ((std::uint64_t{1} << n) - 1)),
                          static_cast<std::uint32_t>(sub >> n)};
            if (c.satisfies_reduct(t, s)) return;
            if (sub == 0) break;
        }
        out.push_back(to_set(s, names));
    });
    std::sort(out.begin(), out.end());
    return out;
}

Rule to_rule(const FlatRule& r) {
    std::vector<Expr> head;
    for (const auto& l : r.head) head.push_back(Expr::lit(l));
    std::vector<Expr> body;
    for (const auto& b : r.body) {
        Expr e = Expr::lit(b.lit);
        for (int i = 0; i < b.nots; ++i) e = Expr::not_(e);
        body.push_back(e);
    }
    return {Expr::disj(head), Expr::conj(body)};
}

std::string to_string(const FlatRule& r) { return to_string(to_rule(r)); }

namespace {

bool flat_head(const Expr& e, std::vector<Literal>& out) {
    switch (e.op()) {
    case ExprOp::Bot: return true;
    case ExprOp::Lit: out.push_back(e.literal()); return true;
    case ExprOp::Disj: return flat_head(e.lhs(), out) && flat_head(e.rhs(), out);
    default: return false;
    }
}

bool flat_body(const Expr& e, std::vector<BodyLiteral>& out) {
    switch (e.op()) {
    case ExprOp::Top: return true;
    case ExprOp::Lit: out.push_back({e.literal(), 0}); return true;
    case ExprOp::Conj: return flat_body(e.lhs(), out) && flat_body(e.rhs(), out);
    case ExprOp::Not:
        if (e.child().op() == ExprOp::Lit) {
            out.push_back({e.child().literal(), 1});
            return true;
        }
        if (e.child().op() == ExprOp::Not && e.child().child().op() == ExprOp::Lit) {
            out.push_back({e.child().child().literal(), 2});
            return true;
        }
        return false;
    default: return false;
    }
}

// Head elements reuse BodyLiteral: nots = 0 literal, 1 `not l`, 2 `not not l`.
using Elem = BodyLiteral;
using Clauses = std::vector<std::vector<Elem>>;

Clauses join(const Clauses& a, const Clauses& b) {
    Clauses out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Clauses product(const Clauses& a, const Clauses& b) {
    Clauses out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            auto c = x;
            for (const auto& e : y) {
                if (std::find(c.begin(), c.end(), e) == c.end()) c.push_back(e);
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

// Body as a disjunction of conjunctions; `k` counts enclosing `not`s (0, 1 or 2).
Clauses body_dnf(const Expr& e, int k) {
    const Clauses truth{{}};
    const Clauses falsity{};
    switch (e.op()) {
    case ExprOp::Top: return k == 1 ? falsity : truth;
    case ExprOp::Bot: return k == 1 ? truth : falsity;
    case ExprOp::Lit: return {{Elem{e.literal(), static_cast<std::uint8_t>(k)}}};
    case ExprOp::Not: return body_dnf(e.child(), k == 0 ? 1 : (k == 1 ? 2 : 1));
    case ExprOp::Conj:
        return k == 1 ? join(body_dnf(e.lhs(), 1), body_dnf(e.rhs(), 1))
                      : product(body_dnf(e.lhs(), k), body_dnf(e.rhs(), k));
    case ExprOp::Disj:
        return k == 1 ? product(body_dnf(e.lhs(), 1), body_dnf(e.rhs(), 1))
                      : join(body_dnf(e.lhs(), k), body_dnf(e.rhs(), k));
    }
    return falsity;
}

// Head as a conjunction of disjunctions, dual to body_dnf.
Clauses head_cnf(const Expr& e, int k) {
    const Clauses truth{};
    const Clauses falsity{{}};
    switch (e.op()) {
    case ExprOp::Top: return k == 1 ? falsity : truth;
    case ExprOp::Bot: return k == 1 ? truth : falsity;
    case ExprOp::Lit: return {{Elem{e.literal(), static_cast<std::uint8_t>(k)}}};
    case ExprOp::Not: return head_cnf(e.child(), k == 0 ? 1 : (k == 1 ? 2 : 1));
    case ExprOp::Conj:
        return k == 1 ? product(head_cnf(e.lhs(), 1), head_cnf(e.rhs(), 1))
                      : join(head_cnf(e.lhs(), k), head_cnf(e.rhs(), k));
    case ExprOp::Disj:
        return k == 1 ? join(head_cnf(e.lhs(), 1), head_cnf(e.rhs(), 1))
                      : product(head_cnf(e.lhs(), k), head_cnf(e.rhs(), k));
    }
    return truth;
}

void add_unique(std::vector<BodyLiteral>& v, const BodyLiteral& b) {
    if (std::find(v.begin(), v.end(), b) == v.end()) v.push_back(b);
}

void normalize_rule(const Rule& r, std::vector<FlatRule>& out) {
    const Clauses heads = head_cnf(r.head, 0);
    const Clauses bodies = body_dnf(r.body, 0);
    const auto start = static_cast<std::ptrdiff_t>(out.size());
    for (const auto& h : heads) {
        for (const auto& b : bodies) {
            FlatRule f;
            for (const auto& e : b) add_unique(f.body, e);
            for (const auto& e : h) {
                if (e.nots == 0) {
                    if (std::find(f.head.begin(), f.head.end(), e.lit) == f.head.end()) f.head.push_back(e.lit);
                } else {
                    // A `not` in the head moves to the body with one more `not` (modulo three).
                    add_unique(f.body, {e.lit, static_cast<std::uint8_t>(e.nots == 1 ? 2 : 1)});
                }
            }
            if (std::find(out.begin() + start, out.end(), f) == out.end()) out.push_back(std::move(f));
        }
    }
}

} // namespace

bool as_flat(const Rule& r, FlatRule& out) {
    FlatRule f;
    if (!flat_head(r.head, f.head) || !flat_body(r.body, f.body)) return false;
    out = std::move(f);
    return true;
}

std::vector<FlatRule> flatten(const Program& P) {
    std::vector<FlatRule> out;
    for (const auto& r : P.rules) {
        FlatRule f;
        if (as_flat(r, f)) {
            out.push_back(std::move(f));
        } else {
            normalize_rule(r, out);
        }
    }
    return out;
}

Program normalize(const Program& P) {
    Program out;
    out.universe = atoms(P);
    std::vector<FlatRule> flat;
    for (const auto& r : P.rules) normalize_rule(r, flat);
    for (const auto& f : flat) out.rules.push_back(to_rule(f));
    return out;
}

} // namespace gk2dlp::dlp
