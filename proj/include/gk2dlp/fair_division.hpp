#pragma once

#include "gk2dlp/embed.hpp"
#include "gk2dlp/gk.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gk2dlp::frontend {

/// splitmix64; the benchmark format depends on this exact sequence.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, 1) from the top 53 bits.
    double uniform();

private:
    std::uint64_t state_;
};

/// Bundles are bitmasks over goods (bit j = good j+1).
struct FairDivisionInstance {
    std::size_t agents = 0;
    std::size_t goods = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint32_t>> acceptable; // per agent, ascending, distinct
};

/// Owner of each good (0-based agent index).
using Allocation = std::vector<std::size_t>;

/// Per agent, acceptable bundles are drawn while a uniform draw stays below P,
/// starting at P = 1 and discounting by (g-1)/g after each draw.
FairDivisionInstance gen_fair_division_instance(std::size_t agents, std::size_t goods, std::uint64_t seed);

/// Atom `o_<i>_<j>`: agent i owns good j (both 1-based).
std::string owner_atom(std::size_t agent, std::size_t good);

/// W: each good has exactly one owner and each agent owns exactly one of its
/// acceptable bundles. D: `: o / o` and `: ~o / ~o` for every owner atom.
embed::DefaultTheory encode_fair_division(const FairDivisionInstance& inst);

/// Allocation read off the known owner atoms of a GK model of the encoding.
Allocation allocation_of(const FairDivisionInstance& inst, const gk::ModalAtoms& atoms, const gk::GkModel& m);

std::string instance_json(const FairDivisionInstance& inst);

} // namespace gk2dlp::frontend
