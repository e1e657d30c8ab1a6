#include "gk2dlp/gk.hpp"

#include "gk2dlp/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace gk2dlp::gk {

struct GkFormula::Node {
    GkOp op;
    Formula arg;
    GkFormula a;
    GkFormula b;
};

GkFormula::GkFormula() : GkFormula(verum()) {}

GkFormula GkFormula::verum() {
    static const GkFormula t(std::make_shared<Node>(Node{GkOp::True, {}, GkFormula(nullptr), GkFormula(nullptr)}));
    return t;
}

GkFormula GkFormula::falsum() {
    static const GkFormula f(std::make_shared<Node>(Node{GkOp::False, {}, GkFormula(nullptr), GkFormula(nullptr)}));
    return f;
}

GkFormula GkFormula::K(Formula phi) {
    return GkFormula(std::make_shared<Node>(Node{GkOp::K, std::move(phi), GkFormula(nullptr), GkFormula(nullptr)}));
}

GkFormula GkFormula::A(Formula phi) {
    return GkFormula(std::make_shared<Node>(Node{GkOp::A, std::move(phi), GkFormula(nullptr), GkFormula(nullptr)}));
}

GkFormula neg(GkFormula f) {
    return GkFormula(std::make_shared<GkFormula::Node>(GkFormula::Node{GkOp::Not, {}, std::move(f), GkFormula(nullptr)}));
}

GkFormula conj(GkFormula f, GkFormula g) {
    return GkFormula(std::make_shared<GkFormula::Node>(GkFormula::Node{GkOp::And, {}, std::move(f), std::move(g)}));
}

GkFormula disj(GkFormula f, GkFormula g) {
    return GkFormula(std::make_shared<GkFormula::Node>(GkFormula::Node{GkOp::Or, {}, std::move(f), std::move(g)}));
}

GkOp GkFormula::op() const noexcept { return node_->op; }
const Formula& GkFormula::arg() const { return node_->arg; }
const GkFormula& GkFormula::child() const { return node_->a; }
const GkFormula& GkFormula::lhs() const { return node_->a; }
const GkFormula& GkFormula::rhs() const { return node_->b; }

bool operator==(const GkFormula& a, const GkFormula& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case GkOp::False:
    case GkOp::True: return true;
    case GkOp::K:
    case GkOp::A: return a.arg() == b.arg();
    case GkOp::Not: return a.child() == b.child();
    case GkOp::And:
    case GkOp::Or: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

GkFormula conjoin(const std::vector<GkFormula>& parts) {
    if (parts.empty()) return GkFormula::verum();
    GkFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

GkFormula disjoin(const std::vector<GkFormula>& parts) {
    if (parts.empty()) return GkFormula::falsum();
    GkFormula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

namespace {

int strength(const GkFormula& f) {
    switch (f.op()) {
    case GkOp::Or: return 1;
    case GkOp::And: return 2;
    default: return 3;
    }
}

void print(const GkFormula& f, std::string& out) {
    switch (f.op()) {
    case GkOp::False: out += "false"; return;
    case GkOp::True: out += "true"; return;
    case GkOp::K:
    case GkOp::A:
        out += f.op() == GkOp::K ? "K(" : "A(";
        out += prop::to_string(f.arg());
        out += ')';
        return;
    case GkOp::Not:
        out += '~';
        if (strength(f.child()) < 3) out += '(';
        print(f.child(), out);
        if (strength(f.child()) < 3) out += ')';
        return;
    case GkOp::And:
    case GkOp::Or: {
        const int s = strength(f);
        const bool pl = strength(f.lhs()) < s;
        const bool pr = strength(f.rhs()) <= s;
        if (pl) out += '(';
        print(f.lhs(), out);
        if (pl) out += ')';
        out += f.op() == GkOp::And ? " & " : " | ";
        if (pr) out += '(';
        print(f.rhs(), out);
        if (pr) out += ')';
        return;
    }
    }
}

void collect(const GkFormula& f, ModalAtoms& out) {
    switch (f.op()) {
    case GkOp::False:
    case GkOp::True: return;
    case GkOp::K:
    case GkOp::A: {
        auto& list = f.op() == GkOp::K ? out.k : out.a;
        if (std::find(list.begin(), list.end(), f.arg()) == list.end()) list.push_back(f.arg());
        return;
    }
    case GkOp::Not: collect(f.child(), out); return;
    case GkOp::And:
    case GkOp::Or:
        collect(f.lhs(), out);
        collect(f.rhs(), out);
        return;
    }
}

} // namespace

std::string to_string(const GkFormula& f) {
    std::string out;
    print(f, out);
    return out;
}

ModalAtoms modal_atoms(const GkTheory& T) {
    ModalAtoms out;
    for (const auto& F : T) collect(F, out);
    return out;
}

std::vector<std::string> base_atoms(const GkTheory& T) {
    // Order follows first occurrence in the theory text, not AtomK-then-AtomA.
    std::vector<std::string> out;
    std::vector<const GkFormula*> stack;
    for (auto it = T.rbegin(); it != T.rend(); ++it) stack.push_back(&*it);
    while (!stack.empty()) {
        const GkFormula* f = stack.back();
        stack.pop_back();
        switch (f->op()) {
        case GkOp::K:
        case GkOp::A: prop::collect_atoms(f->arg(), out); break;
        case GkOp::Not: stack.push_back(&f->child()); break;
        case GkOp::And:
        case GkOp::Or:
            stack.push_back(&f->rhs());
            stack.push_back(&f->lhs());
            break;
        default: break;
        }
    }
    return out;
}

Formula tr_p(const GkFormula& F, TranslationNamespace& ns) {
    switch (F.op()) {
    case GkOp::False: return Formula::falsum();
    case GkOp::True: return Formula::verum();
    case GkOp::K: return Formula::atom(ns.k_atom(F.arg()));
    case GkOp::A: return Formula::atom(ns.a_atom(F.arg()));
    case GkOp::Not: return prop::neg(tr_p(F.child(), ns));
    case GkOp::And: {
        Formula l = tr_p(F.lhs(), ns);
        return prop::conj(std::move(l), tr_p(F.rhs(), ns));
    }
    case GkOp::Or: {
        Formula l = tr_p(F.lhs(), ns);
        return prop::disj(std::move(l), tr_p(F.rhs(), ns));
    }
    }
    return Formula::verum();
}

Formula tr_p(const GkTheory& T, TranslationNamespace& ns) {
    std::vector<Formula> parts;
    parts.reserve(T.size());
    for (const auto& F : T) parts.push_back(tr_p(F, ns));
    return prop::conjoin(parts);
}

std::vector<Formula> known(const GkModel& m, const ModalAtoms& atoms) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < atoms.k.size(); ++i) {
        if (m.k[i]) out.push_back(atoms.k[i]);
    }
    return out;
}

std::vector<Formula> assumed(const GkModel& m, const ModalAtoms& atoms) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i < atoms.a.size(); ++i) {
        if (m.a[i]) out.push_back(atoms.a[i]);
    }
    return out;
}

std::string describe(const GkModel& m, const ModalAtoms& atoms) {
    std::string out = "K: {";
    bool first = true;
    for (const auto& f : known(m, atoms)) {
        if (!first) out += ", ";
        first = false;
        out += prop::to_string(f);
    }
    return out + "}";
}

bool closure_holds(const GkModel& m, const ModalAtoms& atoms, const prop::EnumerationLimits& limits) {
    const auto K = known(m, atoms);
    if (prop::entails(K, Formula::falsum(), limits)) return false;
    for (std::size_t i = 0; i < atoms.k.size(); ++i) {
        if (m.k[i] != prop::entails(K, atoms.k[i], limits)) return false;
    }
    for (std::size_t i = 0; i < atoms.a.size(); ++i) {
        if (m.a[i] != prop::entails(K, atoms.a[i], limits)) return false;
    }
    return true;
}

namespace {

// Set of base interpretations as a bitset over all 2^n assignments.
class WorldSet {
public:
    WorldSet() = default;
    WorldSet(std::size_t worlds, bool full) : words_((worlds + 63) / 64, full ? ~std::uint64_t{0} : 0) {
        if (full && worlds % 64 != 0) words_.back() = (std::uint64_t{1} << (worlds % 64)) - 1;
    }

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    WorldSet& operator&=(const WorldSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    /// Non-empty intersection with the complement of `o`.
    bool escapes(const WorldSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if ((words_[i] & ~o.words_[i]) != 0) return true;
        }
        return false;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Tables {
    std::size_t worlds = 0;
    std::vector<WorldSet> k;
    std::vector<WorldSet> a;
};

Tables build_tables(const ModalAtoms& atoms, const std::vector<std::string>& base,
                    const prop::EnumerationLimits& limits) {
    prop::check_enumeration_cap(base.size(), limits, "GK oracle");
    const prop::Universe u(base);
    Tables t;
    t.worlds = std::size_t{1} << base.size();
    auto table = [&](const Formula& f) {
        WorldSet s(t.worlds, false);
        const prop::BitEvaluator eval(f, u);
        for (std::size_t w = 0; w < t.worlds; ++w) {
            if (eval(w)) s.set(w);
        }
        return s;
    };
    for (const auto& f : atoms.k) t.k.push_back(table(f));
    for (const auto& f : atoms.a) t.a.push_back(table(f));
    return t;
}

bool eval_gk(const GkFormula& F, const ModalAtoms& atoms, unsigned kbits, unsigned abits) {
    switch (F.op()) {
    case GkOp::False: return false;
    case GkOp::True: return true;
    case GkOp::K: {
        const auto i = std::find(atoms.k.begin(), atoms.k.end(), F.arg()) - atoms.k.begin();
        return ((kbits >> i) & 1U) != 0;
    }
    case GkOp::A: {
        const auto i = std::find(atoms.a.begin(), atoms.a.end(), F.arg()) - atoms.a.begin();
        return ((abits >> i) & 1U) != 0;
    }
    case GkOp::Not: return !eval_gk(F.child(), atoms, kbits, abits);
    case GkOp::And: return eval_gk(F.lhs(), atoms, kbits, abits) && eval_gk(F.rhs(), atoms, kbits, abits);
    case GkOp::Or: return eval_gk(F.lhs(), atoms, kbits, abits) || eval_gk(F.rhs(), atoms, kbits, abits);
    }
    return false;
}

WorldSet meet(const std::vector<WorldSet>& tables, unsigned bits, std::size_t worlds) {
    WorldSet s(worlds, true);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if ((bits >> i) & 1U) s &= tables[i];
    }
    return s;
}

// Every false atom has a world of `ctx` falsifying its argument.
bool witnessed(const std::vector<WorldSet>& tables, unsigned bits, const WorldSet& ctx) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (((bits >> i) & 1U) == 0 && !ctx.escapes(tables[i])) return false;
    }
    return true;
}

} // namespace

std::vector<GkModel> gk_models_oracle(const GkTheory& T, const OracleLimits& limits) {
    const ModalAtoms atoms = modal_atoms(T);
    const std::size_t nk = atoms.k.size();
    const std::size_t na = atoms.a.size();
    if (nk + na > limits.modal_cap || nk + na > 30) {
        throw EnumerationLimitError("GK oracle: " + std::to_string(nk + na) + " modal atoms exceed the cap of " +
                                    std::to_string(limits.modal_cap));
    }
    const Tables t = build_tables(atoms, base_atoms(T), limits.prop);
    const unsigned kmax = 1U << nk;
    const unsigned amax = 1U << na;

    // Models of the theory whose K- and A-parts are each consistent and witnessed
    // separately; minimality is judged against these.
    auto phi_candidate = [&](unsigned kb, unsigned ab, const WorldSet& A) {
        const WorldSet K = meet(t.k, kb, t.worlds);
        return !K.empty() && witnessed(t.k, kb, K) && witnessed(t.a, ab, A);
    };
    auto satisfies = [&](unsigned kb, unsigned ab) {
        return std::all_of(T.begin(), T.end(), [&](const GkFormula& F) { return eval_gk(F, atoms, kb, ab); });
    };

    std::vector<GkModel> out;
    for (unsigned ab = 0; ab < amax; ++ab) {
        const WorldSet A = meet(t.a, ab, t.worlds);
        if (A.empty()) continue;
        for (unsigned kb = 0; kb < kmax; ++kb) {
            if (!satisfies(kb, ab)) continue;
            WorldSet KA = meet(t.k, kb, t.worlds);
            const WorldSet K = KA;
            KA &= A;
            if (KA.empty() || !witnessed(t.k, kb, KA) || !witnessed(t.a, ab, KA)) continue;
            bool closed = true;
            for (std::size_t i = 0; i < na && closed; ++i) {
                closed = (((ab >> i) & 1U) != 0) == !K.escapes(t.a[i]);
            }
            if (!closed) continue;
            bool minimal = true;
            // Proper subsets of kb.
            for (unsigned sub = (kb - 1) & kb; minimal; sub = (sub - 1) & kb) {
                if (sub != kb && satisfies(sub, ab) && phi_candidate(sub, ab, A)) minimal = false;
                if (sub == 0) break;
            }
            if (!minimal) continue;
            GkModel m;
            m.k.resize(nk);
            m.a.resize(na);
            for (std::size_t i = 0; i < nk; ++i) m.k[i] = ((kb >> i) & 1U) != 0;
            for (std::size_t i = 0; i < na; ++i) m.a[i] = ((ab >> i) & 1U) != 0;
            if (!closure_holds(m, atoms, limits.prop)) {
                throw Error("GK oracle produced a descriptor violating closure: " + describe(m, atoms));
            }
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace gk2dlp::gk
