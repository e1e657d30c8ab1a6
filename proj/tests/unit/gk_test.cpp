#include "catch_amalgamated.hpp"

#include "generators.hpp"
#include "gk2dlp/error.hpp"
#include "gk2dlp/gk.hpp"
#include "world_oracle.hpp"

#include <algorithm>

using namespace gk2dlp;
using namespace gk2dlp::gk;
using prop::Formula;

namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
const Formula np = prop::neg(p);

const GkFormula F = implies(neg(GkFormula::A(np)), GkFormula::K(p)); // normal default :p/p
const GkFormula G = GkFormula::K(np);

std::vector<std::string> known_text(const GkModel& m, const ModalAtoms& atoms) {
    std::vector<std::string> out;
    for (const auto& f : known(m, atoms)) out.push_back(prop::to_string(f));
    return out;
}

} // namespace

TEST_CASE("modal atoms in first-occurrence order", "[gk]") {
    auto a = modal_atoms({F});
    CHECK(a.k == std::vector<Formula>{p});
    CHECK(a.a == std::vector<Formula>{np});

    a = modal_atoms({F, G});
    CHECK(a.k == std::vector<Formula>{p, np});
    CHECK(a.a == std::vector<Formula>{np});

    a = modal_atoms({});
    CHECK(a.k.empty());
    CHECK(a.a.empty());

    // Identity is syntactic.
    a = modal_atoms({GkFormula::K(prop::conj(p, q)), GkFormula::K(prop::conj(q, p)), GkFormula::K(prop::conj(p, q))});
    CHECK(a.k.size() == 2);
}

TEST_CASE("tr_p replaces modal atoms by fresh atoms", "[gk]") {
    TranslationNamespace ns;
    const auto t = tr_p(GkTheory{F}, ns);
    const auto k = Formula::atom(ns.k_atom(p));
    const auto a = Formula::atom(ns.a_atom(np));
    CHECK(t == prop::implies(prop::neg(a), k));
    CHECK(ns.info(k.name()).kind == AtomKind::KAtom);
    CHECK(ns.info(a.name()).kind == AtomKind::AAtom);

    TranslationNamespace ns2;
    const auto t2 = tr_p(GkTheory{F, G}, ns2);
    CHECK(t2 == prop::conj(prop::implies(prop::neg(Formula::atom(ns2.a_atom(np))), Formula::atom(ns2.k_atom(p))),
                           Formula::atom(ns2.k_atom(np))));

    TranslationNamespace ns3;
    CHECK(tr_p(disj(GkFormula::K(p), GkFormula::A(q)), ns3) ==
          prop::disj(Formula::atom(ns3.k_atom(p)), Formula::atom(ns3.a_atom(q))));
}

TEST_CASE("text form of GK formulas", "[gk]") {
    CHECK(to_string(disj(neg(GkFormula::A(np)), GkFormula::K(p))) == "~A(~p) | K(p)");
    CHECK(to_string(conj(GkFormula::K(p), disj(GkFormula::A(q), GkFormula::verum()))) == "K(p) & (A(q) | true)");
}

TEST_CASE("oracle: normal default has a single model knowing p", "[gk][golden]") {
    const GkTheory T{F};
    const auto ms = gk_models_oracle(T);
    REQUIRE(ms.size() == 1);
    CHECK(known_text(ms[0], modal_atoms(T)) == std::vector<std::string>{"p"});
    CHECK(describe(ms[0], modal_atoms(T)) == "K: {p}");
}

TEST_CASE("oracle: adding K~p yields a single model knowing ~p", "[gk][golden]") {
    const GkTheory T{F, G};
    const auto ms = gk_models_oracle(T);
    REQUIRE(ms.size() == 1);
    CHECK(known_text(ms[0], modal_atoms(T)) == std::vector<std::string>{"~p"});
}

TEST_CASE("oracle: Ap -> Kp has two models", "[gk][golden]") {
    const GkTheory T{implies(GkFormula::A(p), GkFormula::K(p))};
    const auto ms = gk_models_oracle(T);
    REQUIRE(ms.size() == 2);
    CHECK(known_text(ms[0], modal_atoms(T)).empty());
    CHECK(known_text(ms[1], modal_atoms(T)) == std::vector<std::string>{"p"});
}

TEST_CASE("oracle: ~Ap -> Kp has no model", "[gk][golden]") {
    CHECK(gk_models_oracle({implies(neg(GkFormula::A(p)), GkFormula::K(p))}).empty());
}

TEST_CASE("oracle: the empty theory has one model knowing nothing", "[gk][golden]") {
    const auto ms = gk_models_oracle({});
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].k.empty());
    CHECK(ms[0].a.empty());
}

TEST_CASE("oracle: inconsistent knowledge is not a model", "[gk]") {
    CHECK(gk_models_oracle({GkFormula::K(Formula::falsum())}).empty());
    CHECK(gk_models_oracle({GkFormula::K(p), GkFormula::K(np)}).empty());
}

TEST_CASE("oracle enforces its modal-atom cap", "[gk]") {
    GkTheory T;
    for (int i = 0; i < 13; ++i) T.push_back(GkFormula::K(Formula::atom("p" + std::to_string(i))));
    CHECK_THROWS_AS(gk_models_oracle(T), EnumerationLimitError);
    CHECK_NOTHROW(gk_models_oracle(T, OracleLimits{13, {}}));
}

TEST_CASE("oracle agrees with minimal possible-world sets", "[gk][random]") {
    std::mt19937_64 rng(11);
    std::size_t total = 0;
    for (int i = 0; i < 300; ++i) {
        testing::TheoryShape shape{1 + static_cast<std::size_t>(i % 3), 2 + static_cast<std::size_t>(i % 3),
                                   1 + static_cast<std::size_t>(i % 3)};
        const auto T = testing::random_theory(rng, shape);
        const auto ms = gk_models_oracle(T);
        total += ms.size();
        INFO(i);
        CHECK(ms == testing::world_set_models(T));
        for (const auto& m : ms) CHECK(closure_holds(m, modal_atoms(T)));
    }
    CHECK(total > 50);
}

TEST_CASE("oracle is invariant under reordering and duplication", "[gk][random]") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const auto T = testing::random_theory(rng, {});
        auto U = T;
        std::reverse(U.begin(), U.end());
        U.push_back(T.front());
        // Descriptors are indexed by modal-atom order, so compare known sets.
        auto key = [](const GkTheory& X) {
            std::vector<std::vector<std::string>> out;
            for (const auto& m : gk_models_oracle(X)) {
                auto k = known_text(m, modal_atoms(X));
                std::sort(k.begin(), k.end());
                out.push_back(k);
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        CHECK(key(T) == key(U));
    }
}

TEST_CASE("closure check rejects non-closed descriptors", "[gk]") {
    const GkTheory T{F, G};
    const auto atoms = modal_atoms(T); // K: p, ~p; A: ~p
    CHECK(closure_holds(GkModel{{false, true}, {true}}, atoms));
    CHECK_FALSE(closure_holds(GkModel{{false, true}, {false}}, atoms));
    CHECK_FALSE(closure_holds(GkModel{{true, true}, {true}}, atoms));
}
