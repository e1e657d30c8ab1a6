#include "catch_amalgamated.hpp"

#include "generators.hpp"
#include "gk2dlp/dlp.hpp"
#include "gk2dlp/embed.hpp"
#include "gk2dlp/error.hpp"

#include <set>

using namespace gk2dlp;
using namespace gk2dlp::embed;
using gk::GkFormula;
using prop::Formula;

namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");
const Formula r = Formula::atom("r");
const Formula s = Formula::atom("s");
const Formula T_ = Formula::verum();

GkFormula K(Formula f) { return GkFormula::K(std::move(f)); }
GkFormula A(Formula f) { return GkFormula::A(std::move(f)); }

using TheoryKeys = std::set<std::vector<std::uint64_t>>;

/// Known sets of the GK models of `T`, as model-set keys over `universe`.
TheoryKeys gk_keys(const GkTheory& T, const std::vector<std::string>& universe) {
    TheoryKeys out;
    const auto atoms = gk::modal_atoms(T);
    for (const auto& m : gk::gk_models_oracle(T)) out.insert(theory_key(gk::known(m, atoms), universe));
    return out;
}

TheoryKeys extension_keys(const DefaultTheory& dt) {
    TheoryKeys out;
    for (const auto& e : default_extensions_oracle(dt))
        if (e.consistent) out.insert(theory_key(e.basis, atoms(dt)));
    return out;
}

} // namespace

TEST_CASE("default theories embed W then D", "[embed]") {
    const DefaultTheory dt{{}, {{T_, {p}, p}}};
    CHECK(embed_default(dt, DefaultSemantics::Extension) ==
          GkTheory{gk::implies(gk::conj(K(T_), gk::neg(A(prop::neg(p)))), K(p))});
    CHECK(embed_default(dt, DefaultSemantics::Weak) ==
          GkTheory{gk::implies(gk::conj(A(T_), gk::neg(A(prop::neg(p)))), K(p))});
    for (auto sem : {DefaultSemantics::Extension, DefaultSemantics::Weak})
        CHECK(embed_default({{q}, {}}, sem) == GkTheory{K(q)});

    const DefaultTheory two{{q}, {{p, {}, r}, {T_, {p, q}, s}}};
    const auto T = embed_default(two, DefaultSemantics::Extension);
    REQUIRE(T.size() == 3);
    CHECK(T[0] == K(q));
    CHECK(T[1] == gk::implies(K(p), K(r)));
    CHECK(T[2] == gk::implies(gk::conj(gk::conj(K(T_), gk::neg(A(prop::neg(p)))), gk::neg(A(prop::neg(q)))), K(s)));
}

TEST_CASE("normal-form autoepistemic sentences", "[embed]") {
    CHECK(embed_ael({{p, {}, q}}, AelSemantics::Expansion) == GkTheory{gk::implies(A(p), K(q))});
    CHECK(embed_ael({{p, {q}, r}}, AelSemantics::Expansion) ==
          GkTheory{gk::implies(gk::conj(A(p), gk::neg(A(q))), K(r))});
    CHECK(embed_ael({{p, {q}, r}}, AelSemantics::Strong) == GkTheory{gk::implies(gk::conj(K(p), gk::neg(A(q))), K(r))});
    CHECK(embed_ael({{std::nullopt, {q}, std::nullopt}}, AelSemantics::Expansion) ==
          GkTheory{gk::implies(gk::conj(A(T_), gk::neg(A(q))), K(Formula::falsum()))});
}

TEST_CASE("universal causation: the worked example", "[embed]") {
    const auto pq = prop::conj(p, prop::neg(q));
    const UclFormula f = UclFormula::implies(
        UclFormula::conj(UclFormula::atom_of("p"), UclFormula::neg(UclFormula::atom_of("q"))), UclFormula::c(pq));
    const auto T = embed_ucl({{f}, {"p", "q"}});
    REQUIRE(T.size() == 3);
    CHECK(T[0] == gk::implies(gk::conj(A(p), gk::neg(A(q))), K(pq)));
    CHECK(T[1] == gk::disj(A(p), A(prop::neg(p))));
    CHECK(T[2] == gk::disj(A(q), A(prop::neg(q))));
    CHECK(to_string(f) == "~(p & ~q) | C(p & ~q)");
}

TEST_CASE("universal causation: small cases", "[embed]") {
    CHECK(embed_ucl({{UclFormula::c(p)}, {"p"}}) == GkTheory{K(p), gk::disj(A(p), A(prop::neg(p)))});
    CHECK(embed_ucl({{UclFormula::implies(UclFormula::atom_of("q"), UclFormula::c(q))}, {}}) ==
          GkTheory{gk::implies(A(q), K(q)), gk::disj(A(q), A(prop::neg(q)))});
    // Only the interpretation making q true is causally explained.
    const auto T = embed_ucl({{UclFormula::implies(UclFormula::atom_of("q"), UclFormula::c(q))}, {"q"}});
    CHECK(gk_keys(T, {"q"}) == TheoryKeys{theory_key({q}, {"q"})});
}

TEST_CASE("simple programs", "[embed]") {
    CHECK(embed_dlp({{{"p"}, {"q"}, {"r"}}}) == GkTheory{gk::implies(gk::conj(K(q), gk::neg(A(r))), K(p))});
    CHECK(embed_dlp({{{"p", "q"}, {}, {}}}) == GkTheory{gk::disj(K(p), K(q))});
    CHECK(embed_dlp({{{}, {"p"}, {}}}) == GkTheory{gk::implies(K(p), GkFormula::falsum())});
}

TEST_CASE("simple_rules rejects classical negation and nesting", "[embed]") {
    using dlp::Expr;
    const auto lit = [](const char* a) { return Expr::lit(dlp::pos(a)); };
    const dlp::Program ok{{{Expr::disj(lit("p"), lit("q")), Expr::conj(lit("r"), Expr::not_(lit("s")))}}, {}};
    CHECK(simple_rules(ok) == std::vector<SimpleRule>{{{"p", "q"}, {"r"}, {"s"}}});
    CHECK(to_program(simple_rules(ok)).rules == ok.rules);

    CHECK_THROWS_AS(simple_rules({{{Expr::lit(dlp::negl("p")), Expr::top()}}, {}}), UnsupportedFragmentError);
    CHECK_THROWS_AS(simple_rules({{{lit("p"), Expr::not_(Expr::not_(lit("q")))}}, {}}), UnsupportedFragmentError);
    CHECK_THROWS_AS(simple_rules({{{lit("p"), Expr::disj(lit("q"), lit("r"))}}, {}}), UnsupportedFragmentError);
}

TEST_CASE("extension oracle: worked examples", "[embed][golden]") {
    auto ext = default_extensions_oracle({{}, {{T_, {p}, p}}});
    REQUIRE(ext.size() == 1);
    CHECK(ext[0].generators == std::vector<std::size_t>{0});
    CHECK(theory_key(ext[0].basis, {"p"}) == theory_key({p}, {"p"}));

    ext = default_extensions_oracle({{prop::conj(q, r)}, {{q, {s}, s}, {r, {prop::neg(s)}, prop::neg(s)}}});
    REQUIRE(ext.size() == 2);
    CHECK(ext[0].generators == std::vector<std::size_t>{0});
    CHECK(ext[1].generators == std::vector<std::size_t>{1});

    CHECK(default_extensions_oracle({{}, {{T_, {p}, prop::neg(p)}}}).empty());
}

TEST_CASE("extension oracle: inconsistent W has the inconsistent extension", "[embed]") {
    const auto ext = default_extensions_oracle({{p, prop::neg(p)}, {{T_, {q}, q}}});
    REQUIRE(ext.size() == 1);
    CHECK_FALSE(ext[0].consistent);
    CHECK(ext[0].generators.empty());
}

TEST_CASE("extension oracle enforces its formula cap", "[embed]") {
    DefaultTheory dt;
    for (int i = 0; i < 13; ++i) dt.W.push_back(Formula::atom("x" + std::to_string(i)));
    CHECK_THROWS_AS(default_extensions_oracle(dt), EnumerationLimitError);
}

TEST_CASE("GK models of embedded defaults are the extensions", "[embed][random]") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 150; ++i) {
        const auto dt = testing::random_default_theory(rng, 1 + i % 3, 1 + i % 3);
        const auto T = embed_default(dt, DefaultSemantics::Extension);
        if (gk::modal_atoms(T).k.size() + gk::modal_atoms(T).a.size() > 12) continue;
        INFO(i);
        CHECK(gk_keys(T, atoms(dt)) == extension_keys(dt));
    }
}

TEST_CASE("Konolige's mapping aligns the semantics pairwise", "[embed][random]") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 150; ++i) {
        const auto dt = testing::random_default_theory(rng, 1 + i % 3, 1 + i % 3);
        const auto ael = konolige(dt);
        const auto U = atoms(dt);
        const auto ext = embed_default(dt, DefaultSemantics::Extension);
        if (gk::modal_atoms(ext).k.size() + gk::modal_atoms(ext).a.size() > 11) continue;
        INFO(i);
        CHECK(gk_keys(ext, U) == gk_keys(embed_ael(ael, AelSemantics::Strong), U));
        CHECK(gk_keys(embed_default(dt, DefaultSemantics::Weak), U) == gk_keys(embed_ael(ael, AelSemantics::Expansion), U));
    }
}

TEST_CASE("embedded programs reproduce their answer sets", "[embed][random]") {
    std::mt19937_64 rng(43);
    const std::vector<std::string> names{"p", "q", "r"};
    auto pick = [&](std::size_t max) {
        std::vector<std::string> out;
        for (const auto& n : names)
            if (out.size() < max && std::bernoulli_distribution(0.35)(rng)) out.push_back(n);
        return out;
    };
    for (int i = 0; i < 150; ++i) {
        std::vector<SimpleRule> rules;
        for (int j = 0; j < 1 + i % 3; ++j) rules.push_back({pick(2), pick(2), pick(1)});
        const auto T = embed_dlp(rules);
        const auto atoms = gk::modal_atoms(T);
        std::set<std::set<std::string>> from_gk;
        for (const auto& m : gk::gk_models_oracle(T)) {
            std::set<std::string> s;
            for (const auto& n : names)
                if (prop::entails(gk::known(m, atoms), Formula::atom(n))) s.insert(n);
            from_gk.insert(s);
        }
        auto P = to_program(rules);
        P.universe = names;
        std::set<std::set<std::string>> from_lp;
        for (const auto& as : dlp::answer_sets(P)) {
            std::set<std::string> s;
            for (const auto& l : as) s.insert(l.atom);
            from_lp.insert(s);
        }
        INFO(i);
        CHECK(from_gk == from_lp);
    }
}
