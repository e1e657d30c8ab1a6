#pragma once

#include "gk2dlp/fair_division.hpp"

#include <vector>

namespace gk2dlp::testing {

/// Every assignment of goods to agents in which each agent's bundle is exactly
/// one of its acceptable bundles. Sorted.
std::vector<frontend::Allocation> brute_force_allocations(const frontend::FairDivisionInstance& inst);

} // namespace gk2dlp::testing
