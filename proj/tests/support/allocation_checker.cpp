#include "allocation_checker.hpp"

#include <algorithm>

namespace gk2dlp::testing {

std::vector<frontend::Allocation> brute_force_allocations(const frontend::FairDivisionInstance& inst) {
    std::vector<frontend::Allocation> out;
    frontend::Allocation owner(inst.goods, 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < inst.agents && ok; ++i) {
            std::uint32_t bundle = 0;
            for (std::size_t j = 0; j < inst.goods; ++j)
                if (owner[j] == i) bundle |= 1U << j;
            const auto& acc = inst.acceptable[i];
            ok = std::find(acc.begin(), acc.end(), bundle) != acc.end();
        }
        if (ok) out.push_back(owner);
        // Next assignment in base-`agents` counting order.
        std::size_t j = 0;
        while (j < inst.goods && ++owner[j] == inst.agents) owner[j++] = 0;
        if (j == inst.goods) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace gk2dlp::testing
