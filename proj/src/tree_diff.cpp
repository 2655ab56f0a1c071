#include "cpat/tree_diff.hpp"

#include <algorithm>

#include "alignment.hpp"

namespace cpat {

std::size_t MatchScorer::score(const ATerm& a, const ATerm& b) {
    if (!a.same_head(b)) return 0;
    if (equal(a, b)) return a.size();
    auto key = std::make_pair(a.id(), b.id());
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    auto ca = a.children();
    auto cb = b.children();
    const std::size_t n = ca.size();
    const std::size_t m = cb.size();
    // LCS-style table over the child sequences.
    std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t best = std::max(prev[j], cur[j - 1]);
            best = std::max(best, prev[j - 1] + score(ca[i - 1], cb[j - 1]));
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    std::size_t result = 1 + prev[m];
    memo_.emplace(key, result);
    return result;
}

std::size_t match_score(const ATerm& a, const ATerm& b) {
    MatchScorer scorer;
    return scorer.score(a, b);
}

namespace detail {

std::vector<AlignStep> align_children(const ATerm& a, const ATerm& b, MatchScorer& scorer) {
    auto ca = a.children();
    auto cb = b.children();
    const std::size_t n = ca.size();
    const std::size_t m = cb.size();

    std::vector<std::vector<std::size_t>> M(n + 1, std::vector<std::size_t>(m + 1, 0));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            M[i][j] = std::max({M[i - 1][j], M[i][j - 1],
                                M[i - 1][j - 1] + scorer.score(ca[i - 1], cb[j - 1])});

    std::vector<AlignStep> steps;
    steps.reserve(n + m);
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 &&
            M[i][j] == M[i - 1][j - 1] + scorer.score(ca[i - 1], cb[j - 1])) {
            steps.push_back({AlignStep::Kind::Pair, i - 1, j - 1});
            --i;
            --j;
        } else if (j > 0 && M[i][j] == M[i][j - 1]) {
            steps.push_back({AlignStep::Kind::RightOnly, 0, j - 1});
            --j;
        } else {
            steps.push_back({AlignStep::Kind::LeftOnly, i - 1, 0});
            --i;
        }
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

} // namespace detail

namespace {

EditTree all_ops(const ATerm& t, EditOp op) {
    EditTree e{op, t, {}};
    e.children.reserve(t.children().size());
    for (const ATerm& c : t.children()) e.children.push_back(all_ops(c, op));
    return e;
}

void edit_trees_rec(const ATerm& a, const ATerm& b, MatchScorer& scorer, EditTree& ea,
                    EditTree& eb) {
    if (!a.same_head(b)) {
        ea = all_ops(a, EditOp::Delete);
        eb = all_ops(b, EditOp::Delete);
        return;
    }
    if (equal(a, b)) {
        ea = all_ops(a, EditOp::Keep);
        eb = all_ops(b, EditOp::Keep);
        return;
    }
    ea = EditTree{EditOp::Keep, a, {}};
    eb = EditTree{EditOp::Keep, b, {}};
    auto ca = a.children();
    auto cb = b.children();
    for (const auto& step : detail::align_children(a, b, scorer)) {
        switch (step.kind) {
            case detail::AlignStep::Kind::Pair: {
                EditTree sa{EditOp::Delete, ca[step.i], {}};
                EditTree sb{EditOp::Delete, cb[step.j], {}};
                edit_trees_rec(ca[step.i], cb[step.j], scorer, sa, sb);
                ea.children.push_back(std::move(sa));
                eb.children.push_back(std::move(sb));
                break;
            }
            case detail::AlignStep::Kind::LeftOnly:
                ea.children.push_back(all_ops(ca[step.i], EditOp::Delete));
                break;
            case detail::AlignStep::Kind::RightOnly:
                eb.children.push_back(all_ops(cb[step.j], EditOp::Delete));
                break;
        }
    }
}

} // namespace

std::pair<EditTree, EditTree> edit_trees(const ATerm& a, const ATerm& b) {
    MatchScorer scorer;
    EditTree ea{EditOp::Delete, a, {}};
    EditTree eb{EditOp::Delete, b, {}};
    edit_trees_rec(a, b, scorer, ea, eb);
    return {std::move(ea), std::move(eb)};
}

std::size_t keep_count(const EditTree& t) {
    std::size_t n = t.op == EditOp::Keep ? 1 : 0;
    for (const EditTree& c : t.children) n += keep_count(c);
    return n;
}

ATerm erase_ops(const EditTree& t) {
    std::vector<ATerm> children;
    children.reserve(t.children.size());
    for (const EditTree& c : t.children) children.push_back(erase_ops(c));
    switch (t.term.kind()) {
        case ATerm::Kind::Appl: return ATerm::appl(t.term.label(), std::move(children));
        case ATerm::Kind::List: return ATerm::list(std::move(children));
        case ATerm::Kind::Int: return ATerm::integer(t.term.value());
    }
    return t.term;
}

} // namespace cpat
