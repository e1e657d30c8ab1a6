#include "gk2dlp/embed.hpp"

#include "gk2dlp/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gk2dlp::embed {

using gk::GkFormula;

namespace {

GkFormula guarded(GkFormula first, const std::vector<GkFormula>& rest, GkFormula consequent) {
    GkFormula body = std::move(first);
    for (const auto& r : rest) body = conj(std::move(body), r);
    return implies(std::move(body), std::move(consequent));
}

} // namespace

GkTheory embed_default(const DefaultTheory& dt, DefaultSemantics semantics) {
    GkTheory out;
    for (const auto& w : dt.W) out.push_back(GkFormula::K(w));
    for (const auto& d : dt.D) {
        GkFormula pre = semantics == DefaultSemantics::Extension ? GkFormula::K(d.prerequisite)
                                                                 : GkFormula::A(d.prerequisite);
        std::vector<GkFormula> just;
        for (const auto& j : d.justifications) just.push_back(neg(GkFormula::A(prop::neg(j))));
        out.push_back(guarded(std::move(pre), just, GkFormula::K(d.consequent)));
    }
    return out;
}

GkTheory embed_ael(const std::vector<AelSentence>& sentences, AelSemantics semantics) {
    GkTheory out;
    for (const auto& s : sentences) {
        Formula phi = s.neg_l.value_or(Formula::verum());
        GkFormula pre = semantics == AelSemantics::Strong ? GkFormula::K(phi) : GkFormula::A(phi);
        std::vector<GkFormula> rest;
        for (const auto& psi : s.pos_l) rest.push_back(neg(GkFormula::A(psi)));
        out.push_back(guarded(std::move(pre), rest, GkFormula::K(s.objective.value_or(Formula::falsum()))));
    }
    return out;
}

std::vector<AelSentence> konolige(const DefaultTheory& dt) {
    std::vector<AelSentence> out;
    for (const auto& w : dt.W) out.push_back({std::nullopt, {}, w});
    for (const auto& d : dt.D) {
        AelSentence s{d.prerequisite, {}, d.consequent};
        for (const auto& j : d.justifications) s.pos_l.push_back(prop::neg(j));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

void collect_ucl_atoms(const UclFormula& f, std::vector<std::string>& out) {
    switch (f.op) {
    case UclOp::Atom:
        if (std::find(out.begin(), out.end(), f.atom) == out.end()) out.push_back(f.atom);
        break;
    case UclOp::C: prop::collect_atoms(f.arg, out); break;
    default:
        for (const auto& k : f.kids) collect_ucl_atoms(k, out);
    }
}

GkFormula ucl_to_gk(const UclFormula& f) {
    switch (f.op) {
    case UclOp::False: return GkFormula::falsum();
    case UclOp::True: return GkFormula::verum();
    case UclOp::Atom: return GkFormula::A(Formula::atom(f.atom));
    case UclOp::C: return GkFormula::K(f.arg);
    case UclOp::Not: return neg(ucl_to_gk(f.kids.at(0)));
    case UclOp::And: return conj(ucl_to_gk(f.kids.at(0)), ucl_to_gk(f.kids.at(1)));
    case UclOp::Or: return disj(ucl_to_gk(f.kids.at(0)), ucl_to_gk(f.kids.at(1)));
    }
    throw UnsupportedFragmentError("malformed UCL formula");
}

int strength(const UclFormula& f) {
    switch (f.op) {
    case UclOp::Or: return 1;
    case UclOp::And: return 2;
    default: return 3;
    }
}

void print(const UclFormula& f, std::string& out) {
    auto wrapped = [&](const UclFormula& g, bool paren) {
        if (paren) out += '(';
        print(g, out);
        if (paren) out += ')';
    };
    switch (f.op) {
    case UclOp::False: out += "false"; return;
    case UclOp::True: out += "true"; return;
    case UclOp::Atom: out += f.atom; return;
    case UclOp::C: out += "C(" + prop::to_string(f.arg) + ")"; return;
    case UclOp::Not:
        out += '~';
        wrapped(f.kids.at(0), strength(f.kids.at(0)) < 3);
        return;
    case UclOp::And:
    case UclOp::Or:
        wrapped(f.kids.at(0), strength(f.kids.at(0)) < strength(f));
        out += f.op == UclOp::And ? " & " : " | ";
        wrapped(f.kids.at(1), strength(f.kids.at(1)) <= strength(f));
        return;
    }
}

} // namespace

std::string to_string(const UclFormula& f) {
    std::string out;
    print(f, out);
    return out;
}

std::vector<std::string> atoms(const UclTheory& u) {
    std::vector<std::string> out = u.universe;
    for (const auto& f : u.formulas) collect_ucl_atoms(f, out);
    return out;
}

GkTheory embed_ucl(const UclTheory& u) {
    GkTheory out;
    for (const auto& f : u.formulas) out.push_back(ucl_to_gk(f));
    for (const auto& p : atoms(u)) {
        Formula a = Formula::atom(p);
        out.push_back(disj(GkFormula::A(a), GkFormula::A(prop::neg(a))));
    }
    return out;
}

namespace {

std::string plain_atom(const dlp::Expr& e) {
    if (e.op() != dlp::ExprOp::Lit || !e.literal().positive)
        throw UnsupportedFragmentError("expected a plain atom, got `" + dlp::to_string(e) + "`");
    return e.literal().atom;
}

void head_atoms(const dlp::Expr& e, std::vector<std::string>& out) {
    switch (e.op()) {
    case dlp::ExprOp::Bot: return;
    case dlp::ExprOp::Disj:
        head_atoms(e.lhs(), out);
        head_atoms(e.rhs(), out);
        return;
    default: out.push_back(plain_atom(e));
    }
}

void body_atoms(const dlp::Expr& e, SimpleRule& r) {
    switch (e.op()) {
    case dlp::ExprOp::Top: return;
    case dlp::ExprOp::Conj:
        body_atoms(e.lhs(), r);
        body_atoms(e.rhs(), r);
        return;
    case dlp::ExprOp::Not: r.neg.push_back(plain_atom(e.child())); return;
    default: r.pos.push_back(plain_atom(e));
    }
}

} // namespace

std::vector<SimpleRule> simple_rules(const dlp::Program& P) {
    std::vector<SimpleRule> out;
    for (const auto& rule : P.rules) {
        SimpleRule r;
        head_atoms(rule.head, r.head);
        body_atoms(rule.body, r);
        out.push_back(std::move(r));
    }
    return out;
}

dlp::Program to_program(const std::vector<SimpleRule>& rules) {
    dlp::Program P;
    for (const auto& r : rules) {
        std::vector<dlp::Expr> head, body;
        for (const auto& p : r.head) head.push_back(dlp::Expr::lit(dlp::pos(p)));
        for (const auto& p : r.pos) body.push_back(dlp::Expr::lit(dlp::pos(p)));
        for (const auto& p : r.neg) body.push_back(dlp::Expr::not_(dlp::Expr::lit(dlp::pos(p))));
        P.rules.push_back({dlp::Expr::disj(head), dlp::Expr::conj(body)});
    }
    return P;
}

GkTheory embed_dlp(const std::vector<SimpleRule>& rules) {
    GkTheory out;
    for (const auto& r : rules) {
        std::vector<GkFormula> body, head;
        for (const auto& p : r.pos) body.push_back(GkFormula::K(Formula::atom(p)));
        for (const auto& p : r.neg) body.push_back(neg(GkFormula::A(Formula::atom(p))));
        for (const auto& p : r.head) head.push_back(GkFormula::K(Formula::atom(p)));
        GkFormula consequent = gk::disjoin(head);
        out.push_back(body.empty() ? consequent : implies(gk::conjoin(body), consequent));
    }
    return out;
}

std::vector<std::string> atoms(const DefaultTheory& dt) {
    std::vector<std::string> out;
    for (const auto& w : dt.W) prop::collect_atoms(w, out);
    for (const auto& d : dt.D) {
        prop::collect_atoms(d.prerequisite, out);
        for (const auto& j : d.justifications) prop::collect_atoms(j, out);
        prop::collect_atoms(d.consequent, out);
    }
    return out;
}

namespace {

/// Model sets as sorted assignment lists over a fixed universe.
class ModelSpace {
public:
    ModelSpace(const std::vector<std::string>& universe, const prop::EnumerationLimits& limits)
        : universe_(universe) {
        prop::check_enumeration_cap(universe.size(), limits, "theory comparison");
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << universe.size()); ++b) all_.push_back(b);
    }

    std::vector<std::uint64_t> models(const std::vector<Formula>& fs) const {
        std::vector<std::uint64_t> out = all_;
        for (const auto& f : fs) restrict(out, f);
        return out;
    }

    void restrict(std::vector<std::uint64_t>& ms, const Formula& f) const {
        prop::BitEvaluator ev(f, universe_);
        std::erase_if(ms, [&](std::uint64_t b) { return !ev(b); });
    }

    bool entails(const std::vector<std::uint64_t>& ms, const Formula& f) const {
        prop::BitEvaluator ev(f, universe_);
        return std::all_of(ms.begin(), ms.end(), [&](std::uint64_t b) { return ev(b); });
    }

private:
    prop::Universe universe_;
    std::vector<std::uint64_t> all_;
};

} // namespace

std::vector<std::uint64_t> theory_key(const std::vector<Formula>& formulas, const std::vector<std::string>& universe,
                                      const prop::EnumerationLimits& limits) {
    return ModelSpace(universe, limits).models(formulas);
}

std::vector<Extension> default_extensions_oracle(const DefaultTheory& dt, const ExtensionLimits& limits) {
    std::set<Formula> distinct(dt.W.begin(), dt.W.end());
    for (const auto& d : dt.D) distinct.insert(d.consequent);
    if (distinct.size() > limits.formula_cap || dt.D.size() > 63)
        throw EnumerationLimitError("default theory has " + std::to_string(distinct.size()) +
                                    " distinct formulas, cap is " + std::to_string(limits.formula_cap));

    const ModelSpace space(atoms(dt), limits.prop);
    const std::size_t n = dt.D.size();
    std::map<std::vector<std::uint64_t>, Extension> found;

    for (std::uint64_t g = 0; g < (std::uint64_t{1} << n); ++g) {
        std::vector<Formula> candidate = dt.W;
        for (std::size_t i = 0; i < n; ++i)
            if (g >> i & 1) candidate.push_back(dt.D[i].consequent);
        const auto E = space.models(candidate);

        // Defaults whose justifications are all consistent with E.
        std::vector<bool> blocked(n, false);
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& j : dt.D[i].justifications)
                if (space.entails(E, prop::neg(j))) blocked[i] = true;

        // Least set closed under W, Th and the unblocked defaults.
        std::vector<bool> applied(n, false);
        auto S = space.models(dt.W);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (applied[i] || blocked[i] || !space.entails(S, dt.D[i].prerequisite)) continue;
                applied[i] = true;
                space.restrict(S, dt.D[i].consequent);
                changed = true;
            }
        }
        if (S != E || found.count(E)) continue;

        Extension ext;
        ext.basis = dt.W;
        for (std::size_t i = 0; i < n; ++i)
            if (applied[i]) {
                ext.generators.push_back(i);
                ext.basis.push_back(dt.D[i].consequent);
            }
        ext.consistent = !E.empty();
        found.emplace(E, std::move(ext));
    }

    std::vector<Extension> out;
    for (auto& [key, ext] : found) out.push_back(std::move(ext));
    std::sort(out.begin(), out.end(),
              [](const Extension& a, const Extension& b) { return a.generators < b.generators; });
    return out;
}

} // namespace gk2dlp::embed
