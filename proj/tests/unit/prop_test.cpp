#include "catch_amalgamated.hpp"

#include "generators.hpp"
#include "gk2dlp/error.hpp"
#include "gk2dlp/prop.hpp"

#include <algorithm>
#include <set>

using namespace gk2dlp;
using namespace gk2dlp::prop;

namespace {

const Formula p = Formula::atom("p");
const Formula q = Formula::atom("q");

Interpretation interp(const std::vector<std::string>& universe, const std::vector<std::string>& true_atoms) {
    return Interpretation::from_true_atoms(std::make_shared<Universe>(universe), true_atoms);
}

/// Truth-table key over `universe`: bit i of the result is f at assignment i.
std::vector<bool> table(const Formula& f, const std::vector<std::string>& universe) {
    std::vector<bool> out;
    const auto n = universe.size();
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        std::vector<std::string> t;
        for (std::size_t i = 0; i < n; ++i)
            if (bits >> i & 1) t.push_back(universe[i]);
        out.push_back(evaluate(interp(universe, t), f));
    }
    return out;
}

} // namespace

TEST_CASE("evaluate follows the connectives", "[prop]") {
    CHECK(evaluate(interp({"p", "q"}, {"p"}), conj(p, neg(q))));
    CHECK(evaluate(interp({"p"}, {}), Formula::verum()));
    CHECK_FALSE(evaluate(interp({"p", "q"}, {}), disj(p, q)));
    CHECK_THROWS_AS(evaluate(interp({"p"}, {"p"}), q), UniverseMismatchError);
}

TEST_CASE("interpretations print as complete literal sets", "[prop]") {
    CHECK(interp({"p", "q"}, {"p"}).to_string() == "{p, ~q}");
}

TEST_CASE("models enumerates satisfying interpretations", "[prop]") {
    CHECK(models(p, {"p"}).size() == 1);
    CHECK(models(Formula::falsum(), {"p"}).empty());
    CHECK(models(disj(p, q), {"p", "q"}).size() == 3);

    std::vector<std::string> big;
    for (int i = 0; i < 25; ++i) big.push_back("x" + std::to_string(i));
    CHECK_THROWS_AS(models(p, big), EnumerationLimitError);
}

TEST_CASE("entails checks every model of the premises", "[prop]") {
    CHECK(entails({p}, disj(p, q)));
    CHECK_FALSE(entails({}, p));
    CHECK(entails({conj(p, q)}, q));
    CHECK(entails({Formula::falsum()}, q));
}

TEST_CASE("nnf pushes negation to the atoms", "[prop]") {
    CHECK(nnf(neg(conj(p, q))) == disj(neg(p), neg(q)));
    CHECK(nnf(neg(neg(p))) == p);
    CHECK(nnf(neg(implies(p, q))) == conj(p, neg(q)));
}

TEST_CASE("cnf reads clauses as rules", "[prop]") {
    TranslationNamespace ns;
    CHECK(cnf(disj(neg(p), q)) == std::vector<ClauseRule>{{{"q"}, {"p"}}});
    CHECK(cnf(Formula::verum()).empty());
    CHECK(cnf(neg(p)) == std::vector<ClauseRule>{{{}, {"p"}}});
    CHECK(cnf(Formula::falsum()) == std::vector<ClauseRule>{{{}, {}}});
    CHECK(cnf(disj(neg(p), q), CnfMode::Structural, ns) == std::vector<ClauseRule>{{{"q"}, {"p"}}});
}

TEST_CASE("distributive cnf respects its clause cap", "[prop]") {
    std::vector<Formula> parts;
    for (int i = 0; i < 12; ++i)
        parts.push_back(conj(Formula::atom("a" + std::to_string(i)), Formula::atom("b" + std::to_string(i))));
    CHECK_THROWS_AS(cnf(disjoin(parts), CnfOptions{1000}), EnumerationLimitError);
    TranslationNamespace ns;
    CHECK(cnf(disjoin(parts), CnfMode::Structural, ns, CnfOptions{1000}).size() < 100);
}

TEST_CASE("random formulas: nnf and distributive cnf are equivalent", "[prop][random]") {
    std::mt19937_64 rng(1);
    const std::vector<std::string> universe{"p", "q", "r", "s"};
    for (int i = 0; i < 300; ++i) {
        const auto f = testing::random_formula(rng, universe, 4);
        CHECK(is_nnf(nnf(f)));
        CHECK(table(nnf(f), universe) == table(f, universe));
        CHECK(table(clauses_formula(cnf(f)), universe) == table(f, universe));
    }
}

TEST_CASE("random formulas: structural cnf projects onto the models of f", "[prop][random]") {
    std::mt19937_64 rng(2);
    const std::vector<std::string> base{"p", "q", "r"};
    for (int i = 0; i < 150; ++i) {
        const auto f = testing::random_formula(rng, base, 4);
        TranslationNamespace ns(base);
        const auto g = clauses_formula(cnf(f, CnfMode::Structural, ns));
        std::vector<std::string> all = base;
        collect_atoms(g, all);
        std::set<std::vector<bool>> projected;
        for (const auto& m : models(g, all)) {
            std::vector<bool> v;
            for (std::size_t j = 0; j < base.size(); ++j) v.push_back(m.value(j));
            projected.insert(v);
        }
        std::set<std::vector<bool>> expected;
        for (const auto& m : models(f, base)) {
            std::vector<bool> v;
            for (std::size_t j = 0; j < base.size(); ++j) v.push_back(m.value(j));
            expected.insert(v);
        }
        CHECK(projected == expected);
        for (const auto& e : ns.entries())
            if (std::find(base.begin(), base.end(), e.name) == base.end()) CHECK(e.kind == AtomKind::CnfDef);
    }
}

TEST_CASE("rename tags every atom with a registered copy", "[prop]") {
    TranslationNamespace ns({"p", "q"});
    const auto f = conj(p, neg(q));
    const auto w = rename(f, RenameTag::k_witness(1), ns);
    CHECK(w == conj(Formula::atom("w_k1__p"), neg(Formula::atom("w_k1__q"))));
    CHECK(ns.info("w_k1__p").kind == AtomKind::KWitnessCopy);
    CHECK(ns.info("w_k1__p").source == "p");
    CHECK(w.size() == f.size());

    CHECK(rename(Formula::verum(), RenameTag::star(), ns) == Formula::verum());
    CHECK(rename(p, RenameTag::hat(), ns) == Formula::atom("h__p"));
    CHECK(rename(p, RenameTag::k_witness(2), ns) != rename(p, RenameTag::k_witness(1), ns));
}

TEST_CASE("tags never stack", "[prop]") {
    TranslationNamespace ns({"p"});
    const auto s = rename(p, RenameTag::star(), ns);
    CHECK_THROWS_AS(rename(s, RenameTag::star(), ns), NamespaceError);
    const auto h = rename(p, RenameTag::hat(), ns);
    CHECK_THROWS_AS(rename(h, RenameTag::hat(), ns), NamespaceError);
}

TEST_CASE("generated names avoid base atoms", "[prop]") {
    TranslationNamespace ns({"k__1", "u"});
    const auto& k = ns.k_atom(p);
    CHECK(k != "k__1");
    CHECK(ns.control("u") != "u");
    CHECK(ns.info(k).kind == AtomKind::KAtom);
}

TEST_CASE("entails agrees with model inclusion", "[prop][random]") {
    std::mt19937_64 rng(3);
    const std::vector<std::string> universe{"p", "q", "r"};
    for (int i = 0; i < 200; ++i) {
        const auto g = testing::random_formula(rng, universe, 3);
        const auto f = testing::random_formula(rng, universe, 3);
        const auto tg = table(g, universe);
        const auto tf = table(f, universe);
        bool included = true;
        for (std::size_t j = 0; j < tg.size(); ++j) included = included && (!tg[j] || tf[j]);
        CHECK(entails({g}, f) == included);
    }
}
