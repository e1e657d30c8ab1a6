#pragma once

#include "gk2dlp/gk.hpp"

#include <vector>

namespace gk2dlp::testing {

/// GK models found directly on possible-world sets: a nonempty world set W over
/// the base atoms is a model when T holds with K and A both ranging over W and no
/// proper superset W1 of W satisfies T with K ranging over W1 and A over W.
/// Reported as K-/A-atom assignments, sorted. At most 4 base atoms.
std::vector<gk::GkModel> world_set_models(const gk::GkTheory& T);

} // namespace gk2dlp::testing
