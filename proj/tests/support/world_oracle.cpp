#include "world_oracle.hpp"

#include "gk2dlp/error.hpp"

#include <algorithm>
#include <cstdint>

namespace gk2dlp::testing {

namespace {

using Mask = std::uint32_t; // set of worlds, at most 16

struct Tables {
    std::vector<Mask> k; // worlds satisfying each K-argument
    std::vector<Mask> a;
};

bool holds(Mask where, Mask worlds) { return (worlds & ~where) == 0; }

bool eval(const gk::GkFormula& f, const gk::ModalAtoms& atoms, const Tables& t, Mask wk, Mask wa) {
    switch (f.op()) {
    case gk::GkOp::False: return false;
    case gk::GkOp::True: return true;
    case gk::GkOp::K: {
        auto i = std::find(atoms.k.begin(), atoms.k.end(), f.arg()) - atoms.k.begin();
        return holds(t.k[i], wk);
    }
    case gk::GkOp::A: {
        auto i = std::find(atoms.a.begin(), atoms.a.end(), f.arg()) - atoms.a.begin();
        return holds(t.a[i], wa);
    }
    case gk::GkOp::Not: return !eval(f.child(), atoms, t, wk, wa);
    case gk::GkOp::And: return eval(f.lhs(), atoms, t, wk, wa) && eval(f.rhs(), atoms, t, wk, wa);
    case gk::GkOp::Or: return eval(f.lhs(), atoms, t, wk, wa) || eval(f.rhs(), atoms, t, wk, wa);
    }
    return false;
}

} // namespace

std::vector<gk::GkModel> world_set_models(const gk::GkTheory& T) {
    const auto base = gk::base_atoms(T);
    if (base.size() > 4) throw EnumerationLimitError("world-set oracle handles at most 4 base atoms");
    const auto atoms = gk::modal_atoms(T);
    const prop::Universe universe(base);
    const unsigned nworlds = 1U << base.size();
    const Mask all = nworlds == 32 ? ~Mask{0} : (Mask{1} << nworlds) - 1;

    auto table = [&](const std::vector<prop::Formula>& args) {
        std::vector<Mask> out;
        for (const auto& f : args) {
            prop::BitEvaluator ev(f, universe);
            Mask m = 0;
            for (unsigned w = 0; w < nworlds; ++w)
                if (ev(w)) m |= Mask{1} << w;
            out.push_back(m);
        }
        return out;
    };
    const Tables t{table(atoms.k), table(atoms.a)};
    auto sat = [&](Mask wk, Mask wa) {
        return std::all_of(T.begin(), T.end(), [&](const auto& F) { return eval(F, atoms, t, wk, wa); });
    };

    std::vector<gk::GkModel> out;
    for (Mask W = 1; W != 0 && W <= all; ++W) {
        if (!sat(W, W)) continue;
        bool minimal = true;
        const Mask rest = all & ~W;
        for (Mask extra = rest; extra != 0 && minimal; extra = (extra - 1) & rest)
            if (sat(W | extra, W)) minimal = false;
        if (!minimal) continue;
        gk::GkModel m;
        for (Mask k : t.k) m.k.push_back(holds(k, W));
        for (Mask a : t.a) m.a.push_back(holds(a, W));
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace gk2dlp::testing
