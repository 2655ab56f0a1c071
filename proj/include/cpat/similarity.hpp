#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpat/aterm.hpp"
#include "cpat/weave.hpp"

namespace cpat {

// Normalized symmetric tree similarity:
//   delta(a, b) = match_score(a, b) / max(size(a), size(b))
// Always in [0,1]; exactly 1 iff the trees are equal; exactly symmetric.
double delta(const ATerm& a, const ATerm& b);

// Which context a Mutation contributes to similarity comparisons.
enum class SideRule { Before, After };

const char* side_rule_name(SideRule rule);

// The tree a change is compared by: Insertions use context_after, Deletions
// context_before, Mutations the side chosen by the rule.
const ATerm& rep_tree(const Change& c, SideRule rule);

// "I0007"-style identifier: change-kind initial plus zero-padded index.
std::string change_id(ChangeKind kind, std::size_t index);

struct DistanceMatrix {
    ChangeKind kind;
    std::vector<std::string> items; // change identifiers in row/column order
    std::vector<double> values;     // dense n×n, row-major

    std::size_t size() const { return items.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * items.size() + j]; }
};

struct BoolMatrix {
    std::vector<std::string> items;
    std::vector<char> values; // row-major 0/1

    std::size_t size() const { return items.size(); }
    bool at(std::size_t i, std::size_t j) const { return values[i * items.size() + j] != 0; }
};

// Pairwise delta over the rep trees of `changes` (which must all be of
// `kind`). `ids` labels the rows/columns; when empty, default ids are
// generated from the position within this matrix. Pair computations run in
// parallel; the result does not depend on the thread count.
DistanceMatrix distance_matrix(const std::vector<Change>& changes, ChangeKind kind,
                               SideRule rule, std::vector<std::string> ids = {});

// Entry true iff delta >= tau (so the diagonal is always true).
BoolMatrix boolean_matrix(const DistanceMatrix& d, double tau);

// Element-wise OR of per-kind boolean matrices padded to `full_items` (ids
// absent from a part contribute false). Entries across different parts are
// always false.
BoolMatrix combine_boolean(const std::vector<BoolMatrix>& parts,
                           std::vector<std::string> full_items);

struct ChangeGroup {
    ChangeKind kind;
    std::vector<std::string> members; // in matrix order; never empty
    double tau = 0.0;
};

// Connected components of the thresholded similarity graph. Groups are
// ordered by their first member's matrix position.
std::vector<ChangeGroup> threshold_groups(const DistanceMatrix& d, double tau);

struct SweepRow {
    double tau;
    std::size_t insertions;
    std::size_t deletions;
    std::size_t mutations;
    std::size_t total;
};

// Group counts per kind for each tau (taus ascending). The distance matrices
// are built once and re-thresholded, so sweeping is cheap. Counts are
// nondecreasing in tau.
std::vector<SweepRow> sweep_group_counts(const std::vector<Change>& changes,
                                         const std::vector<double>& taus, SideRule rule);

// CSV renderings: a header row of item ids, then one row of values per item.
// Distances print with six decimal places; boolean entries print as 1/0.
std::string to_csv(const DistanceMatrix& m);
std::string to_csv(const BoolMatrix& m);
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

} // namespace cpat
