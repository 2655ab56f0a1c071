#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpat/aterm.hpp"
#include "cpat/profile.hpp"
#include "cpat/tree_diff.hpp"

namespace cpat {

// The two edit trees merged into one tree. Match points carry the node common
// to both inputs; holes and mismatches are leaves marking where the inputs
// disagree.
struct WovenTree {
    enum class Kind {
        Match,     // same head in both trees; children woven recursively
        Mismatch,  // both subtrees present, heads differ
        LeftHole,  // subtree present only in the right tree (insertion)
        RightHole, // subtree present only in the left tree (deletion)
    };

    Kind kind;
    std::optional<ATerm> left;  // Match/Mismatch/RightHole
    std::optional<ATerm> right; // Match/Mismatch/LeftHole
    std::vector<WovenTree> children; // Match only
};

struct WeaveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weaves directly from the two terms.
WovenTree weave_terms(const ATerm& a, const ATerm& b);

// Weaves a pair of edit trees produced by one edit_trees call. Throws
// WeaveError if the pair is inconsistent (the projection laws would fail).
WovenTree weave(const EditTree& left_edit, const EditTree& right_edit);

// Structural reconstruction of the left/right input from a woven tree.
ATerm project_left(const WovenTree& w);
ATerm project_right(const WovenTree& w);

enum class ChangeKind { Insertion, Deletion, Mutation };

const char* change_kind_name(ChangeKind k);

struct ChangeOrigin {
    std::string path;
    std::string old_commit;
    std::string new_commit;
};

// One extracted difference plus the closest enclosing statement on each side.
struct Change {
    ChangeKind kind;
    std::optional<ATerm> before; // Deletion/Mutation
    std::optional<ATerm> after;  // Insertion/Mutation
    std::optional<ATerm> context_before;
    std::optional<ATerm> context_after;
    ChangeOrigin origin;
};

// One Change per hole/mismatch point. Context is the projection of the
// nearest ancestor match point whose label is in profile.statement_labels,
// falling back to the woven root when no such ancestor exists.
std::vector<Change> extract_changes(const WovenTree& w, const LanguageProfile& profile,
                                    const ChangeOrigin& origin);

} // namespace cpat
