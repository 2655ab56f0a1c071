#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cpat/aterm.hpp"

namespace cpat {

enum class EditOp { Keep, Delete };

// One side of a structural diff: the input tree with every node annotated
// Keep (participates in the matching) or Delete. Erasing the annotations
// gives back the input tree.
struct EditTree {
    EditOp op;
    ATerm term; // subtree rooted at this node
    std::vector<EditTree> children;
};

// Maximum-matching score between two trees. Zero when the root heads differ;
// otherwise one plus the best total over an order-preserving alignment of the
// child sequences. Equal trees score size(a).
std::size_t match_score(const ATerm& a, const ATerm& b);

// Keep/Delete annotations for both inputs under the maximum matching chosen
// by a deterministic backtrack (diagonal, then left, then up on ties).
std::pair<EditTree, EditTree> edit_trees(const ATerm& a, const ATerm& b);

// Number of Keep nodes; equals match_score of the original pair.
std::size_t keep_count(const EditTree& t);

// Reassembles the term from the edit tree's structure (ignores ops).
ATerm erase_ops(const EditTree& t);

// Memoized scorer. One instance caches subtree-pair scores across calls;
// useful when scoring many related pairs (the pairwise distance matrix).
// Entries are keyed by node identity, so every term scored must outlive the
// scorer's last use.
class MatchScorer {
public:
    std::size_t score(const ATerm& a, const ATerm& b);

private:
    struct KeyHash {
        std::size_t operator()(const std::pair<const void*, const void*>& k) const {
            auto h = reinterpret_cast<std::uintptr_t>(k.first) * 0x9e3779b97f4a7c15ull;
            return h ^ (reinterpret_cast<std::uintptr_t>(k.second) * 0xc2b2ae3d27d4eb4full);
        }
    };
    std::unordered_map<std::pair<const void*, const void*>, std::size_t, KeyHash> memo_;
};

} // namespace cpat
