#pragma once

#include <functional>
#include <vector>

#include "gamelab/gadgets.hpp"
#include "gamelab/ms.hpp"
#include "gamelab/qbf.hpp"

namespace gamelab {

// Spoiler on ({<A|a>}, {<A|a'>}) for A = build_domset_structure(G, k), given a dominating set
// (graph vertex indices, at most k; shorter sets are padded by repetition). For each level
// j = k..1 he plays <c^j_1, u> on the left and then an auxiliary in-neighbor of it, and
// finishes on the right with null_r' or null_q', whichever pair the level-1 answer forced.
SpoilerScript spoiler_script_domset(const GadgetOutput& gadget, int k, std::vector<int> domset);

// The plain side sequence of the script above: 2k left rounds and one right round.
std::vector<Side> domset_script_sides(int k);

// Spoiler on ({<A|a>}, {<A|a'>}) for A = build_skyscraper(phi, t). `policy` answers the
// existential player's move given the assignment so far (index i holds x_{i+1}, 0 = false).
SpoilerScript spoiler_script_skyscraper(const GadgetOutput& gadget, const QbfInstance& phi, int t,
                                        std::function<bool(const std::vector<int>&)> policy);

}  // namespace gamelab
