#include "gk2dlp/prop.hpp"

#include "gk2dlp/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace gk2dlp::prop {

Universe::Universe(std::vector<std::string> atoms) {
    for (auto& p : atoms) {
        if (index_.count(p) != 0) continue;
        index_.emplace(p, atoms_.size());
        atoms_.push_back(std::move(p));
    }
}

std::optional<std::size_t> Universe::index(const std::string& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Interpretation::Interpretation(std::shared_ptr<const Universe> universe, std::vector<bool> values)
    : universe_(std::move(universe)), values_(std::move(values)) {
    if (values_.size() != universe_->size()) {
        throw UniverseMismatchError("interpretation must assign every atom of its universe");
    }
}

Interpretation Interpretation::from_true_atoms(std::shared_ptr<const Universe> universe,
                                               const std::vector<std::string>& true_atoms) {
    std::vector<bool> values(universe->size(), false);
    for (const auto& p : true_atoms) {
        auto i = universe->index(p);
        if (!i) throw UniverseMismatchError("atom '" + p + "' is not in the universe");
        values[*i] = true;
    }
    return Interpretation(std::move(universe), std::move(values));
}

bool Interpretation::value(const std::string& p) const {
    auto i = universe_->index(p);
    if (!i) throw UniverseMismatchError("atom '" + p + "' is not in the universe");
    return values_[*i];
}

std::string Interpretation::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i != 0) out += ", ";
        if (!values_[i]) out += '~';
        out += (*universe_)[i];
    }
    return out + "}";
}

bool evaluate(const Interpretation& I, const Formula& f) {
    switch (f.op()) {
    case Op::False: return false;
    case Op::True: return true;
    case Op::Atom: return I.value(f.name());
    case Op::Not: return !evaluate(I, f.child());
    case Op::And: return evaluate(I, f.lhs()) && evaluate(I, f.rhs());
    case Op::Or: return evaluate(I, f.lhs()) || evaluate(I, f.rhs());
    }
    return false;
}

namespace {

std::uint32_t compile(const Formula& f, const Universe& u, std::vector<std::pair<Op, std::pair<std::uint32_t, std::uint32_t>>>& code) {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    switch (f.op()) {
    case Op::False:
    case Op::True: break;
    case Op::Atom: {
        auto i = u.index(f.name());
        if (!i) throw UniverseMismatchError("atom '" + f.name() + "' is not in the universe");
        a = static_cast<std::uint32_t>(*i);
        break;
    }
    case Op::Not: a = compile(f.child(), u, code); break;
    case Op::And:
    case Op::Or:
        a = compile(f.lhs(), u, code);
        b = compile(f.rhs(), u, code);
        break;
    }
    code.push_back({f.op(), {a, b}});
    return static_cast<std::uint32_t>(code.size() - 1);
}

} // namespace

BitEvaluator::BitEvaluator(const Formula& f, const Universe& universe) {
    if (universe.size() > 64) throw EnumerationLimitError("bit evaluation supports at most 64 atoms");
    std::vector<std::pair<Op, std::pair<std::uint32_t, std::uint32_t>>> code;
    compile(f, universe, code);
    code_.reserve(code.size());
    for (const auto& [op, ab] : code) code_.push_back(Step{op, ab.first, ab.second});
}

bool BitEvaluator::operator()(std::uint64_t bits) const {
    // Post-order code: every operand index is smaller than its user.
    thread_local std::vector<char> vals;
    vals.resize(code_.size());
    for (std::size_t i = 0; i < code_.size(); ++i) {
        const Step& s = code_[i];
        switch (s.op) {
        case Op::False: vals[i] = 0; break;
        case Op::True: vals[i] = 1; break;
        case Op::Atom: vals[i] = static_cast<char>((bits >> s.a) & 1U); break;
        case Op::Not: vals[i] = static_cast<char>(!vals[s.a]); break;
        case Op::And: vals[i] = static_cast<char>(vals[s.a] && vals[s.b]); break;
        case Op::Or: vals[i] = static_cast<char>(vals[s.a] || vals[s.b]); break;
        }
    }
    return vals.back() != 0;
}

void check_enumeration_cap(std::size_t n, const EnumerationLimits& limits, const char* what) {
    if (n > limits.atom_cap || n > 63) {
        throw EnumerationLimitError(std::string(what) + ": " + std::to_string(n) +
                                    " atoms exceed the enumeration cap of " +
                                    std::to_string(std::min<std::size_t>(limits.atom_cap, 63)));
    }
}

std::vector<Interpretation> models(const Formula& f, const std::vector<std::string>& universe,
                                   const EnumerationLimits& limits) {
    auto u = std::make_shared<const Universe>(universe);
    check_enumeration_cap(u->size(), limits, "models");
    BitEvaluator eval(f, *u);
    std::vector<Interpretation> out;
    const std::uint64_t n = std::uint64_t{1} << u->size();
    for (std::uint64_t bits = 0; bits < n; ++bits) {
        if (!eval(bits)) continue;
        std::vector<bool> values(u->size());
        for (std::size_t i = 0; i < u->size(); ++i) values[i] = ((bits >> i) & 1U) != 0;
        out.emplace_back(u, std::move(values));
    }
    return out;
}

bool entails(const std::vector<Formula>& gamma, const Formula& f, const EnumerationLimits& limits) {
    std::vector<std::string> names;
    for (const auto& g : gamma) collect_atoms(g, names);
    collect_atoms(f, names);
    const Universe u(names);
    check_enumeration_cap(u.size(), limits, "entails");
    std::vector<BitEvaluator> premises;
    premises.reserve(gamma.size());
    for (const auto& g : gamma) premises.emplace_back(g, u);
    const BitEvaluator goal(f, u);
    const std::uint64_t n = std::uint64_t{1} << u.size();
    for (std::uint64_t bits = 0; bits < n; ++bits) {
        bool all = true;
        for (const auto& p : premises) {
            if (!p(bits)) {
                all = false;
                break;
            }
        }
        if (all && !goal(bits)) return false;
    }
    return true;
}

namespace {

Formula nnf_signed(const Formula& f, bool negated) {
    switch (f.op()) {
    case Op::False: return negated ? Formula::verum() : Formula::falsum();
    case Op::True: return negated ? Formula::falsum() : Formula::verum();
    case Op::Atom: return negated ? neg(f) : f;
    case Op::Not: return nnf_signed(f.child(), !negated);
    case Op::And:
        return negated ? disj(nnf_signed(f.lhs(), true), nnf_signed(f.rhs(), true))
                       : conj(nnf_signed(f.lhs(), false), nnf_signed(f.rhs(), false));
    case Op::Or:
        return negated ? conj(nnf_signed(f.lhs(), true), nnf_signed(f.rhs(), true))
                       : disj(nnf_signed(f.lhs(), false), nnf_signed(f.rhs(), false));
    }
    return f;
}

} // namespace

Formula nnf(const Formula& f) { return nnf_signed(f, false); }

bool is_nnf(const Formula& f) noexcept {
    switch (f.op()) {
    case Op::False:
    case Op::True:
    case Op::Atom: return true;
    case Op::Not: return f.child().op() == Op::Atom;
    case Op::And:
    case Op::Or: return is_nnf(f.lhs()) && is_nnf(f.rhs());
    }
    return false;
}

const char* cnf_mode_name(CnfMode m) noexcept {
    return m == CnfMode::Distributive ? "distributive" : "structural";
}

namespace {

struct Lit {
    std::string atom;
    bool positive;
    friend bool operator==(const Lit&, const Lit&) = default;
};
using Clause = std::vector<Lit>;

// Deduplicates literals; returns false for tautologies.
bool tidy(Clause& c) {
    Clause out;
    out.reserve(c.size());
    for (auto& l : c) {
        bool dup = false;
        for (const auto& m : out) {
            if (m.atom != l.atom) continue;
            if (m.positive != l.positive) return false;
            dup = true;
        }
        if (!dup) out.push_back(std::move(l));
    }
    c = std::move(out);
    return true;
}

ClauseRule to_rule(const Clause& c) {
    ClauseRule r;
    for (const auto& l : c) (l.positive ? r.head : r.body).push_back(l.atom);
    return r;
}

void flatten(const Formula& f, Op op, std::vector<Formula>& out) {
    if (f.op() == op) {
        flatten(f.lhs(), op, out);
        flatten(f.rhs(), op, out);
    } else {
        out.push_back(f);
    }
}

std::vector<Clause> distribute(const Formula& f, std::size_t max_clauses) {
    switch (f.op()) {
    case Op::True: return {};
    case Op::False: return {Clause{}};
    case Op::Atom: return {Clause{Lit{f.name(), true}}};
    case Op::Not: return {Clause{Lit{f.child().name(), false}}};
    case Op::And: {
        auto a = distribute(f.lhs(), max_clauses);
        auto b = distribute(f.rhs(), max_clauses);
        a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
        return a;
    }
    case Op::Or: {
        const auto a = distribute(f.lhs(), max_clauses);
        const auto b = distribute(f.rhs(), max_clauses);
        if (a.size() * b.size() > max_clauses) {
            throw EnumerationLimitError("distributive CNF exceeds " + std::to_string(max_clauses) +
                                        " clauses; use structural mode");
        }
        std::vector<Clause> out;
        out.reserve(a.size() * b.size());
        for (const auto& x : a) {
            for (const auto& y : b) {
                Clause c = x;
                c.insert(c.end(), y.begin(), y.end());
                if (tidy(c)) out.push_back(std::move(c));
            }
        }
        return out;
    }
    }
    return {};
}

std::vector<ClauseRule> finish(std::vector<Clause> clauses) {
    std::vector<ClauseRule> out;
    std::unordered_set<std::string> seen;
    for (auto& c : clauses) {
        if (!tidy(c)) continue;
        ClauseRule r = to_rule(c);
        std::string key;
        for (const auto& h : r.head) key += h + ",";
        key += "<-";
        for (const auto& b : r.body) key += b + ",";
        if (!seen.insert(key).second) continue;
        out.push_back(std::move(r));
    }
    return out;
}

// Definitional (Tseitin) clause form over an NNF formula. Every definition
// atom is a full equivalence, so each model of the input extends uniquely.
class Structural {
public:
    explicit Structural(TranslationNamespace& ns) : ns_(ns) {}

    std::vector<Clause> run(const Formula& f) {
        std::vector<Formula> conjuncts;
        flatten(f, Op::And, conjuncts);
        for (const auto& c : conjuncts) {
            std::vector<Formula> items;
            flatten(c, Op::Or, items);
            Clause clause;
            bool satisfied = false;
            for (const auto& item : items) {
                const Value v = value_of(item);
                if (v.constant) {
                    if (v.truth) satisfied = true;
                    continue;
                }
                clause.push_back(v.lit);
            }
            if (!satisfied) clauses_.push_back(std::move(clause));
        }
        return std::move(clauses_);
    }

private:
    struct Value {
        bool constant = false;
        bool truth = false;
        Lit lit{};
    };

    Value value_of(const Formula& f) {
        switch (f.op()) {
        case Op::True: return {true, true, {}};
        case Op::False: return {true, false, {}};
        case Op::Atom: return {false, false, Lit{f.name(), true}};
        case Op::Not: return {false, false, Lit{f.child().name(), false}};
        case Op::And:
        case Op::Or: break;
        }
        if (auto it = memo_.find(f); it != memo_.end()) return {false, false, Lit{it->second, true}};
        const bool is_and = f.op() == Op::And;
        std::vector<Formula> items;
        flatten(f, f.op(), items);
        std::vector<Lit> lits;
        for (const auto& item : items) {
            const Value v = value_of(item);
            if (v.constant) {
                // Absorbing constant decides the whole junction; neutral ones drop out.
                if (v.truth != is_and) return v;
                continue;
            }
            lits.push_back(v.lit);
        }
        if (lits.empty()) return {true, is_and, {}};
        if (lits.size() == 1) return {false, false, lits.front()};
        const std::string d = ns_.cnf_def(to_string(f));
        memo_.emplace(f, d);
        const Lit pd{d, true};
        const Lit nd{d, false};
        Clause big{is_and ? pd : nd};
        for (const auto& l : lits) {
            const Lit nl{l.atom, !l.positive};
            big.push_back(is_and ? nl : l);
            clauses_.push_back(is_and ? Clause{nd, l} : Clause{pd, nl});
        }
        clauses_.push_back(std::move(big));
        return {false, false, pd};
    }

    TranslationNamespace& ns_;
    std::vector<Clause> clauses_;
    std::unordered_map<Formula, std::string, FormulaHash> memo_;
};

} // namespace

std::vector<ClauseRule> cnf(const Formula& f, CnfMode mode, TranslationNamespace& ns, const CnfOptions& options) {
    const Formula g = nnf(f);
    if (mode == CnfMode::Distributive) return finish(distribute(g, options.max_clauses));
    for (const auto& p : atoms(g)) {
        if (!ns.contains(p)) ns.add_base(p);
    }
    return finish(Structural(ns).run(g));
}

std::vector<ClauseRule> cnf(const Formula& f, const CnfOptions& options) {
    return finish(distribute(nnf(f), options.max_clauses));
}

Formula clause_formula(const ClauseRule& c) {
    std::vector<Formula> lits;
    for (const auto& h : c.head) lits.push_back(Formula::atom(h));
    for (const auto& b : c.body) lits.push_back(neg(Formula::atom(b)));
    return disjoin(lits);
}

Formula clauses_formula(const std::vector<ClauseRule>& cs) {
    std::vector<Formula> parts;
    parts.reserve(cs.size());
    for (const auto& c : cs) parts.push_back(clause_formula(c));
    return conjoin(parts);
}

namespace {

AtomKind tag_kind(RenameTag::Kind k) {
    switch (k) {
    case RenameTag::Kind::KCopy: return AtomKind::KCopy;
    case RenameTag::Kind::ACopy: return AtomKind::ACopy;
    case RenameTag::Kind::KWitness: return AtomKind::KWitnessCopy;
    case RenameTag::Kind::AWitness: return AtomKind::AWitnessCopy;
    case RenameTag::Kind::Star: return AtomKind::Star;
    case RenameTag::Kind::Hat: return AtomKind::Hat;
    }
    return AtomKind::Base;
}

std::string tagged(const std::string& p, const RenameTag& tag, TranslationNamespace& ns) {
    if (!ns.contains(p)) ns.add_base(p);
    if (ns.info(p).kind == tag_kind(tag.kind)) {
        throw NamespaceError("atom '" + p + "' already carries the " +
                             std::string(kind_name(tag_kind(tag.kind))) + " tag");
    }
    switch (tag.kind) {
    case RenameTag::Kind::KCopy: return ns.k_copy(p);
    case RenameTag::Kind::ACopy: return ns.a_copy(p);
    case RenameTag::Kind::KWitness: return ns.k_witness(tag.index, p);
    case RenameTag::Kind::AWitness: return ns.a_witness(tag.index, p);
    case RenameTag::Kind::Star: return ns.star(p);
    case RenameTag::Kind::Hat: return ns.hat(p);
    }
    return p;
}

Formula rename_rec(const Formula& f, const RenameTag& tag, TranslationNamespace& ns,
                   std::unordered_map<std::string, std::string>& cache) {
    switch (f.op()) {
    case Op::False:
    case Op::True: return f;
    case Op::Atom: {
        auto it = cache.find(f.name());
        if (it == cache.end()) it = cache.emplace(f.name(), tagged(f.name(), tag, ns)).first;
        return Formula::atom(it->second);
    }
    case Op::Not: return neg(rename_rec(f.child(), tag, ns, cache));
    case Op::And: return conj(rename_rec(f.lhs(), tag, ns, cache), rename_rec(f.rhs(), tag, ns, cache));
    case Op::Or: return disj(rename_rec(f.lhs(), tag, ns, cache), rename_rec(f.rhs(), tag, ns, cache));
    }
    return f;
}

} // namespace

Formula rename(const Formula& f, const RenameTag& tag, TranslationNamespace& ns) {
    std::unordered_map<std::string, std::string> cache;
    return rename_rec(f, tag, ns, cache);
}

Formula substitute(const Formula& f, const std::unordered_map<std::string, std::string>& names) {
    switch (f.op()) {
    case Op::False:
    case Op::True: return f;
    case Op::Atom: {
        auto it = names.find(f.name());
        return it == names.end() ? f : Formula::atom(it->second);
    }
    case Op::Not: return neg(substitute(f.child(), names));
    case Op::And: return conj(substitute(f.lhs(), names), substitute(f.rhs(), names));
    case Op::Or: return disj(substitute(f.lhs(), names), substitute(f.rhs(), names));
    }
    return f;
}

} // namespace gk2dlp::prop
