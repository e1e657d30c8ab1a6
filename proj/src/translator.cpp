#include "gk2dlp/translator.hpp"

#include "gk2dlp/asp.hpp"
#include "gk2dlp/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace gk2dlp::translator {

using dlp::BodyLiteral;
using dlp::FlatRule;
using dlp::Literal;
using prop::RenameTag;

namespace {

Formula katom(const Formula& phi, TranslationNamespace& ns) { return Formula::atom(ns.k_atom(phi)); }
Formula aatom(const Formula& phi, TranslationNamespace& ns) { return Formula::atom(ns.a_atom(phi)); }

// Registers base atoms, then the theory's k-/a-atoms, and returns the tr_p conjuncts.
std::vector<Formula> prepare(const GkTheory& T, TranslationNamespace& ns, gk::ModalAtoms& atoms) {
    for (const auto& p : gk::base_atoms(T)) ns.add_base(p);
    std::vector<Formula> out;
    for (const auto& F : T) out.push_back(gk::tr_p(F, ns));
    atoms = gk::modal_atoms(T);
    return out;
}

// `guard ⊃ (~psi' & body...)` with psi' renamed by `tag`.
Formula witness(const Formula& guard, const Formula& psi, const RenameTag& tag,
                const std::vector<std::pair<Formula, Formula>>& respected, TranslationNamespace& ns) {
    std::vector<Formula> parts{prop::neg(prop::rename(psi, tag, ns))};
    for (const auto& [atom, phi] : respected) parts.push_back(prop::implies(atom, prop::rename(phi, tag, ns)));
    return prop::implies(prop::neg(guard), prop::conjoin(parts));
}

} // namespace

std::vector<Formula> phi_conjuncts(const GkTheory& T, TranslationNamespace& ns) {
    gk::ModalAtoms atoms;
    std::vector<Formula> out = prepare(T, ns, atoms);
    std::vector<std::pair<Formula, Formula>> ks;
    std::vector<std::pair<Formula, Formula>> as;
    for (const auto& phi : atoms.k) ks.emplace_back(katom(phi, ns), phi);
    for (const auto& phi : atoms.a) as.emplace_back(aatom(phi, ns), phi);
    for (const auto& [k, phi] : ks) out.push_back(prop::implies(k, prop::rename(phi, RenameTag::k_copy(), ns)));
    for (const auto& [a, phi] : as) out.push_back(prop::implies(a, prop::rename(phi, RenameTag::a_copy(), ns)));
    for (std::size_t i = 0; i < ks.size(); ++i) {
        out.push_back(witness(ks[i].first, ks[i].second, RenameTag::k_witness(i + 1), ks, ns));
    }
    for (std::size_t i = 0; i < as.size(); ++i) {
        out.push_back(witness(as[i].first, as[i].second, RenameTag::a_witness(i + 1), as, ns));
    }
    return out;
}

std::vector<Formula> psi_conjuncts(const GkTheory& T, TranslationNamespace& ns) {
    gk::ModalAtoms atoms;
    std::vector<Formula> out = prepare(T, ns, atoms);
    std::vector<std::pair<Formula, Formula>> both;
    for (const auto& phi : atoms.k) both.emplace_back(katom(phi, ns), phi);
    for (const auto& phi : atoms.a) both.emplace_back(aatom(phi, ns), phi);
    for (const auto& [x, phi] : both) out.push_back(prop::implies(x, phi));
    for (std::size_t i = 0; i < atoms.k.size(); ++i) {
        out.push_back(witness(both[i].first, atoms.k[i], RenameTag::k_witness(i + 1), both, ns));
    }
    for (std::size_t i = 0; i < atoms.a.size(); ++i) {
        out.push_back(witness(both[atoms.k.size() + i].first, atoms.a[i], RenameTag::a_witness(i + 1), both, ns));
    }
    return out;
}

Formula build_phi(const GkTheory& T, TranslationNamespace& ns) { return prop::conjoin(phi_conjuncts(T, ns)); }
Formula build_psi(const GkTheory& T, TranslationNamespace& ns) { return prop::conjoin(psi_conjuncts(T, ns)); }

namespace {

std::vector<Formula> star_all(const std::vector<Formula>& parts, TranslationNamespace& ns) {
    std::vector<std::string> names;
    for (const auto& f : parts) prop::collect_atoms(f, names);
    std::unordered_map<std::string, std::string> map;
    for (const auto& x : names) {
        if (ns.info(x).kind != AtomKind::AAtom) map.emplace(x, ns.star(x));
    }
    std::vector<Formula> out;
    out.reserve(parts.size());
    for (const auto& f : parts) out.push_back(prop::substitute(f, map));
    return out;
}

} // namespace

Formula build_tstar(const GkTheory& T, TranslationNamespace& ns) {
    return prop::conjoin(star_all(phi_conjuncts(T, ns), ns));
}

dlp::Expr to_nested(const Formula& f) {
    const Formula g = prop::nnf(f);
    struct Rec {
        static dlp::Expr go(const Formula& x) {
            switch (x.op()) {
            case prop::Op::True: return dlp::Expr::top();
            case prop::Op::False: return dlp::Expr::bot();
            case prop::Op::Atom: return dlp::Expr::lit(dlp::pos(x.name()));
            case prop::Op::Not: return dlp::Expr::lit(dlp::negl(x.child().name()));
            case prop::Op::And: return dlp::Expr::conj(go(x.lhs()), go(x.rhs()));
            case prop::Op::Or: return dlp::Expr::disj(go(x.lhs()), go(x.rhs()));
            }
            return dlp::Expr::top();
        }
    };
    return Rec::go(g);
}

dlp::Expr tr_ne(const GkTheory& T, TranslationNamespace& ns) { return to_nested(build_psi(T, ns)); }

namespace {

class Builder {
public:
    explicit Builder(TranslationOutput& out) : out_(out) {}

    void add(std::uint8_t group, FlatRule r) {
        out_.program.rules.push_back(dlp::to_rule(r));
        out_.group.push_back(group);
    }
    void add(std::uint8_t group, dlp::Rule r) {
        out_.program.rules.push_back(std::move(r));
        out_.group.push_back(group);
    }

private:
    TranslationOutput& out_;
};

std::vector<prop::ClauseRule> clauses_of(const std::vector<Formula>& parts, const TranslateOptions& o,
                                         TranslationNamespace& ns) {
    // Clause forms of the conjuncts are concatenated; for the structural mode this
    // equals the form of their conjunction and keeps definition order stable.
    std::vector<prop::ClauseRule> out;
    for (const auto& f : parts) {
        auto cs = prop::cnf(f, o.cnf, ns, o.cnf_options);
        out.insert(out.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
    }
    return out;
}

void append_unique(std::vector<std::string>& v, std::unordered_set<std::string>& seen, const std::string& x) {
    if (seen.insert(x).second) v.push_back(x);
}

} // namespace

TranslationOutput tr_lp(const GkTheory& T, const TranslateOptions& options) {
    TranslationOutput out;
    TranslationNamespace& ns = out.ns;
    const auto psi = psi_conjuncts(T, ns);
    out.atoms = gk::modal_atoms(T);
    for (const auto& phi : out.atoms.k) out.k_names.push_back(ns.k_atom(phi));
    for (const auto& phi : out.atoms.a) out.a_names.push_back(ns.a_atom(phi));
    out.u = ns.control("u");
    out.v = ns.control("v");
    const std::string& u = out.u;
    const std::string& v = out.v;
    Builder b(out);

    // (1) and the atom list for (2).
    std::vector<std::string> guessed;
    std::unordered_set<std::string> guessed_seen;
    for (const auto& f : psi) {
        for (const auto& p : prop::atoms(f)) append_unique(guessed, guessed_seen, p);
    }
    if (options.nested_constraint) {
        b.add(1, dlp::Rule{dlp::Expr::bot(), dlp::Expr::not_(to_nested(prop::conjoin(psi)))});
    } else {
        for (const auto& c : clauses_of(psi, options, ns)) {
            FlatRule r;
            for (const auto& h : c.head) r.body.push_back({dlp::pos(h), 1});
            for (const auto& x : c.body) r.body.push_back({dlp::negl(x), 1});
            for (const auto& h : c.head) append_unique(guessed, guessed_seen, h);
            for (const auto& x : c.body) append_unique(guessed, guessed_seen, x);
            b.add(1, std::move(r));
        }
    }
    // (2)
    for (const auto& p : guessed) b.add(2, FlatRule{{dlp::pos(p), dlp::negl(p)}, {}});

    // (3) and the saturation list for (9).
    const auto tstar = star_all(phi_conjuncts(T, ns), ns);
    std::unordered_set<std::string> sat_seen;
    for (const auto& c : clauses_of(tstar, options, ns)) {
        FlatRule r;
        r.head.push_back(dlp::pos(u));
        for (const auto& h : c.head) r.head.push_back(dlp::pos(h));
        for (const auto& x : c.body) r.body.push_back({dlp::pos(x), 0});
        for (const auto& x : c.head) {
            if (ns.info(x).kind != AtomKind::AAtom) append_unique(out.saturated_u, sat_seen, x);
        }
        for (const auto& x : c.body) {
            if (ns.info(x).kind != AtomKind::AAtom) append_unique(out.saturated_u, sat_seen, x);
        }
        b.add(3, std::move(r));
    }
    std::vector<std::string> c_names;
    std::vector<std::string> kstar;
    for (std::size_t i = 0; i < out.atoms.k.size(); ++i) {
        c_names.push_back(ns.c_atom(out.atoms.k[i]));
        kstar.push_back(ns.star(out.k_names[i]));
        // k* also occurs in (6)-(8); it is saturated even when the clause form lost it.
        append_unique(out.saturated_u, sat_seen, kstar.back());
    }
    // (4)
    {
        FlatRule r;
        r.head.push_back(dlp::pos(u));
        for (const auto& c : c_names) r.head.push_back(dlp::pos(c));
        b.add(4, std::move(r));
    }
    for (std::size_t i = 0; i < c_names.size(); ++i) {
        const auto& k = out.k_names[i];
        b.add(5, FlatRule{{dlp::pos(u)}, {{dlp::pos(c_names[i]), 0}, {dlp::pos(k), 1}}});
        b.add(6, FlatRule{{dlp::pos(u)}, {{dlp::pos(kstar[i]), 0}, {dlp::pos(k), 1}}});
        b.add(7, FlatRule{{dlp::pos(u)}, {{dlp::pos(c_names[i]), 0}, {dlp::pos(kstar[i]), 0}, {dlp::negl(k), 1}}});
        b.add(8, FlatRule{{dlp::pos(u), dlp::pos(c_names[i]), dlp::pos(kstar[i])}, {{dlp::negl(k), 1}}});
    }
    // (9), (10), (11)
    for (const auto& s : out.saturated_u) b.add(9, FlatRule{{dlp::pos(s)}, {{dlp::pos(u), 0}}});
    for (const auto& c : c_names) b.add(10, FlatRule{{dlp::pos(c)}, {{dlp::pos(u), 0}}});
    b.add(11, FlatRule{{}, {{dlp::pos(u), 1}}});
    for (const auto& c : c_names) out.saturated_u.push_back(c);

    // (12), (13), (14)
    std::vector<Formula> known;
    for (std::size_t i = 0; i < out.atoms.k.size(); ++i) {
        known.push_back(prop::implies(Formula::atom(out.k_names[i]), prop::rename(out.atoms.k[i], RenameTag::hat(), ns)));
    }
    std::vector<Formula> assumed;
    for (std::size_t i = 0; i < out.atoms.a.size(); ++i) {
        assumed.push_back(prop::implies(Formula::atom(out.a_names[i]), prop::rename(out.atoms.a[i], RenameTag::hat(), ns)));
    }
    known.push_back(prop::neg(prop::conjoin(assumed)));
    std::unordered_set<std::string> hat_seen;
    for (const auto& c : clauses_of(known, options, ns)) {
        FlatRule r;
        r.head.push_back(dlp::pos(v));
        for (const auto& h : c.head) r.head.push_back(dlp::pos(h));
        for (const auto& x : c.body) r.body.push_back({dlp::pos(x), 0});
        for (const auto* side : {&c.head, &c.body}) {
            for (const auto& x : *side) {
                const auto kind = ns.info(x).kind;
                if (kind != AtomKind::KAtom && kind != AtomKind::AAtom) append_unique(out.saturated_v, hat_seen, x);
            }
        }
        b.add(12, std::move(r));
    }
    for (const auto& h : out.saturated_v) b.add(13, FlatRule{{dlp::pos(h)}, {{dlp::pos(v), 0}}});
    b.add(14, FlatRule{{}, {{dlp::pos(v), 1}}});

    for (const auto& e : ns.entries()) out.program.universe.push_back(e.name);
    return out;
}

gk::GkModel decode(const dlp::LiteralSet& answer_set, const TranslationOutput& out) {
    auto has = [&](const std::string& name) { return answer_set.count(dlp::pos(name)) != 0; };
    if (!has(out.u)) throw MalformedModelError("answer set lacks the control atom " + out.u);
    if (!has(out.v)) throw MalformedModelError("answer set lacks the control atom " + out.v);
    gk::GkModel m;
    for (const auto& k : out.k_names) m.k.push_back(has(k));
    for (const auto& a : out.a_names) m.a.push_back(has(a));
    return m;
}

std::vector<gk::GkModel> solve_internal(const TranslationOutput& out) {
    dlp::SolveOptions opts;
    opts.project = out.k_names;
    opts.project.insert(opts.project.end(), out.a_names.begin(), out.a_names.end());
    std::vector<gk::GkModel> models;
    for (const auto& s : dlp::solve(out.program, opts)) models.push_back(decode(s, out));
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
    return models;
}

} // namespace gk2dlp::translator
