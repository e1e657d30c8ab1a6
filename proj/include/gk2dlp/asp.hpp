#pragma once

#include "gk2dlp/dlp.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gk2dlp::dlp {

struct SolveOptions {
    /// Atoms whose literals tell answer sets apart; one representative is
    /// returned per distinct projection. Empty means all literals.
    std::vector<std::string> project;
    /// Stop after this many answer sets (0 = all).
    std::size_t max_models = 0;
};

struct SolveStats {
    std::size_t candidates = 0;
    std::size_t loop_formulas = 0;
    std::size_t models = 0;
};

/// Answer sets via a SAT encoding of the completion, with unfounded-set checks
/// on every cyclic component of the positive dependency graph and loop-formula
/// learning on failure. Result order follows discovery, then is sorted.
std::vector<LiteralSet> solve(const std::vector<FlatRule>& rules, const SolveOptions& options = {},
                              SolveStats* stats = nullptr);
std::vector<LiteralSet> solve(const Program& P, const SolveOptions& options = {}, SolveStats* stats = nullptr);

} // namespace gk2dlp::dlp
