#include "gk2dlp/formula.hpp"

#include "gk2dlp/error.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace gk2dlp::prop {

struct Formula::Node {
    Op op;
    std::string name;
    Formula a;
    Formula b;
    std::size_t size = 1;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

Formula::Formula() : Formula(verum()) {}

Formula Formula::verum() {
    static const Formula t = [] {
        auto n = std::make_shared<Node>(Node{Op::True, {}, Formula(nullptr), Formula(nullptr)});
        n->hash = mix(0, static_cast<std::size_t>(Op::True));
        return Formula(std::move(n));
    }();
    return t;
}

Formula Formula::falsum() {
    static const Formula f = [] {
        auto n = std::make_shared<Node>(Node{Op::False, {}, Formula(nullptr), Formula(nullptr)});
        n->hash = mix(0, static_cast<std::size_t>(Op::False));
        return Formula(std::move(n));
    }();
    return f;
}

Formula Formula::atom(std::string name) {
    if (!is_valid_atom_name(name)) {
        throw Error("invalid atom name '" + name + "'");
    }
    auto n = std::make_shared<Node>(Node{Op::Atom, std::move(name), Formula(nullptr), Formula(nullptr)});
    n->hash = mix(mix(0, static_cast<std::size_t>(Op::Atom)), std::hash<std::string>{}(n->name));
    return Formula(std::move(n));
}

Formula neg(Formula f) {
    auto n = std::make_shared<Formula::Node>(
        Formula::Node{Op::Not, {}, std::move(f), Formula(nullptr)});
    n->size = 1 + n->a.size();
    n->hash = mix(mix(0, static_cast<std::size_t>(Op::Not)), n->a.hash());
    return Formula(std::move(n));
}

Formula conj(Formula f, Formula g) {
    auto n = std::make_shared<Formula::Node>(Formula::Node{Op::And, {}, std::move(f), std::move(g)});
    n->size = 1 + n->a.size() + n->b.size();
    n->hash = mix(mix(mix(0, static_cast<std::size_t>(Op::And)), n->a.hash()), n->b.hash());
    return Formula(std::move(n));
}

Formula disj(Formula f, Formula g) {
    auto n = std::make_shared<Formula::Node>(Formula::Node{Op::Or, {}, std::move(f), std::move(g)});
    n->size = 1 + n->a.size() + n->b.size();
    n->hash = mix(mix(mix(0, static_cast<std::size_t>(Op::Or)), n->a.hash()), n->b.hash());
    return Formula(std::move(n));
}

Op Formula::op() const noexcept { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::child() const { return node_->a; }
const Formula& Formula::lhs() const { return node_->a; }
const Formula& Formula::rhs() const { return node_->b; }
std::size_t Formula::size() const noexcept { return node_ ? node_->size : 0; }
std::size_t Formula::hash() const noexcept { return node_ ? node_->hash : 0; }

bool Formula::is_literal() const noexcept {
    return op() == Op::Atom || (op() == Op::Not && child().op() == Op::Atom);
}

bool operator==(const Formula& a, const Formula& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return Formula::compare(a, b) == 0;
}

int Formula::compare(const Formula& a, const Formula& b) noexcept {
    if (a.node_ == b.node_) return 0;
    if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
    switch (a.op()) {
    case Op::False:
    case Op::True: return 0;
    case Op::Atom: {
        const int c = a.name().compare(b.name());
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Op::Not: return compare(a.child(), b.child());
    case Op::And:
    case Op::Or: {
        int c = compare(a.lhs(), b.lhs());
        return c != 0 ? c : compare(a.rhs(), b.rhs());
    }
    }
    return 0;
}

Formula conjoin(std::span<const Formula> parts) {
    if (parts.empty()) return Formula::verum();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

Formula disjoin(std::span<const Formula> parts) {
    if (parts.empty()) return Formula::falsum();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
    switch (f.op()) {
    case Op::False:
    case Op::True: return;
    case Op::Atom:
        if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
        return;
    case Op::Not: collect_atoms(f.child(), out); return;
    case Op::And:
    case Op::Or:
        collect_atoms(f.lhs(), out);
        collect_atoms(f.rhs(), out);
        return;
    }
}

std::vector<std::string> atoms(const Formula& f) {
    std::vector<std::string> out;
    collect_atoms(f, out);
    return out;
}

namespace {

// Binding strength: Or 1, And 2, Not/atom 3.
int strength(const Formula& f) {
    switch (f.op()) {
    case Op::Or: return 1;
    case Op::And: return 2;
    default: return 3;
    }
}

void print(const Formula& f, std::string& out) {
    switch (f.op()) {
    case Op::False: out += "false"; return;
    case Op::True: out += "true"; return;
    case Op::Atom: out += f.name(); return;
    case Op::Not:
        out += '~';
        if (strength(f.child()) < 3) {
            out += '(';
            print(f.child(), out);
            out += ')';
        } else {
            print(f.child(), out);
        }
        return;
    case Op::And:
    case Op::Or: {
        const int s = strength(f);
        // Left-associative: a same-strength right child needs parentheses.
        const bool pl = strength(f.lhs()) < s;
        const bool pr = strength(f.rhs()) <= s;
        if (pl) out += '(';
        print(f.lhs(), out);
        if (pl) out += ')';
        out += f.op() == Op::And ? " & " : " | ";
        if (pr) out += '(';
        print(f.rhs(), out);
        if (pr) out += ')';
        return;
    }
    }
}

} // namespace

std::string to_string(const Formula& f) {
    std::string out;
    print(f, out);
    return out;
}

bool is_valid_atom_name(const std::string& name) noexcept {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(name[0])) return false;
    return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || digit(c); });
}

} // namespace gk2dlp::prop
