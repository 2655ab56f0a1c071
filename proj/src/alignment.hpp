#pragma once

// Internal: order-preserving child alignment shared by edit_trees and weave.

#include <cstddef>
#include <vector>

#include "cpat/aterm.hpp"
#include "cpat/tree_diff.hpp"

namespace cpat::detail {

struct AlignStep {
    enum class Kind {
        Pair,      // a-child i aligned with b-child j (match when heads agree)
        LeftOnly,  // a-child i has no counterpart
        RightOnly, // b-child j has no counterpart
    };
    Kind kind;
    std::size_t i = 0;
    std::size_t j = 0;
};

// DP backtrack over the two child sequences. Ties prefer the diagonal, then
// skipping the right child, then skipping the left child, which makes the
// result deterministic.
std::vector<AlignStep> align_children(const ATerm& a, const ATerm& b, MatchScorer& scorer);

} // namespace cpat::detail
