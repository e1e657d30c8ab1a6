#include "gk2dlp/fair_division.hpp"

#include "gk2dlp/error.hpp"

#include "json.hpp"

#include <algorithm>

namespace gk2dlp::frontend {

using prop::Formula;

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

FairDivisionInstance gen_fair_division_instance(std::size_t agents, std::size_t goods, std::uint64_t seed) {
    if (agents == 0 || goods == 0 || goods > 31) throw Error("fair division needs agents >= 1 and 1 <= goods <= 31");
    FairDivisionInstance inst{agents, goods, seed, {}};
    SplitMix64 rng(seed);
    const double discount = static_cast<double>(goods - 1) / static_cast<double>(goods);
    for (std::size_t i = 0; i < agents; ++i) {
        std::vector<std::uint32_t> bundles;
        for (double p = 1.0; rng.uniform() < p; p *= discount) {
            // Uniform nonempty subset by rejection.
            std::uint32_t b = 0;
            while (b == 0) b = static_cast<std::uint32_t>(rng.next() >> (64 - goods));
            bundles.push_back(b);
        }
        std::sort(bundles.begin(), bundles.end());
        bundles.erase(std::unique(bundles.begin(), bundles.end()), bundles.end());
        inst.acceptable.push_back(std::move(bundles));
    }
    return inst;
}

std::string owner_atom(std::size_t agent, std::size_t good) {
    return "o_" + std::to_string(agent) + "_" + std::to_string(good);
}

embed::DefaultTheory encode_fair_division(const FairDivisionInstance& inst) {
    auto o = [](std::size_t i, std::size_t j) { return Formula::atom(owner_atom(i + 1, j + 1)); };
    embed::DefaultTheory dt;
    for (std::size_t j = 0; j < inst.goods; ++j) {
        std::vector<Formula> owners;
        for (std::size_t i = 0; i < inst.agents; ++i) owners.push_back(o(i, j));
        dt.W.push_back(prop::disjoin(owners));
        for (std::size_t i = 0; i < inst.agents; ++i)
            for (std::size_t k = i + 1; k < inst.agents; ++k) dt.W.push_back(prop::disj(prop::neg(o(i, j)), prop::neg(o(k, j))));
    }
    for (std::size_t i = 0; i < inst.agents; ++i) {
        std::vector<Formula> options;
        for (std::uint32_t b : inst.acceptable[i]) {
            std::vector<Formula> lits;
            for (std::size_t j = 0; j < inst.goods; ++j) lits.push_back((b >> j & 1) ? o(i, j) : prop::neg(o(i, j)));
            options.push_back(prop::conjoin(lits));
        }
        dt.W.push_back(prop::disjoin(options));
    }
    for (std::size_t i = 0; i < inst.agents; ++i)
        for (std::size_t j = 0; j < inst.goods; ++j) {
            dt.D.push_back({Formula::verum(), {o(i, j)}, o(i, j)});
            dt.D.push_back({Formula::verum(), {prop::neg(o(i, j))}, prop::neg(o(i, j))});
        }
    return dt;
}

Allocation allocation_of(const FairDivisionInstance& inst, const gk::ModalAtoms& atoms, const gk::GkModel& m) {
    Allocation out(inst.goods, inst.agents);
    for (std::size_t x = 0; x < atoms.k.size(); ++x) {
        if (!m.k[x] || !atoms.k[x].is_atom()) continue;
        for (std::size_t i = 0; i < inst.agents; ++i)
            for (std::size_t j = 0; j < inst.goods; ++j)
                if (atoms.k[x].name() == owner_atom(i + 1, j + 1)) {
                    if (out[j] != inst.agents && out[j] != i) throw MalformedModelError("good owned twice");
                    out[j] = i;
                }
    }
    if (std::find(out.begin(), out.end(), inst.agents) != out.end()) throw MalformedModelError("good without owner");
    return out;
}

std::string instance_json(const FairDivisionInstance& inst) {
    nlohmann::json j;
    j["agents"] = inst.agents;
    j["goods"] = inst.goods;
    j["seed"] = inst.seed;
    j["acceptable"] = nlohmann::json::array();
    for (const auto& bundles : inst.acceptable) {
        nlohmann::json agent = nlohmann::json::array();
        for (std::uint32_t b : bundles) {
            nlohmann::json goods = nlohmann::json::array();
            for (std::size_t g = 0; g < inst.goods; ++g)
                if (b >> g & 1) goods.push_back(g + 1);
            agent.push_back(goods);
        }
        j["acceptable"].push_back(agent);
    }
    return j.dump(2) + "\n";
}

} // namespace gk2dlp::frontend
