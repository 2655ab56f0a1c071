#include "cpat/weave.hpp"

#include <unordered_map>
#include <utility>

#include "alignment.hpp"

namespace cpat {

const char* change_kind_name(ChangeKind k) {
    switch (k) {
        case ChangeKind::Insertion: return "insertion";
        case ChangeKind::Deletion: return "deletion";
        case ChangeKind::Mutation: return "mutation";
    }
    return "";
}

namespace {

WovenTree all_match(const ATerm& t) {
    WovenTree w{WovenTree::Kind::Match, t, t, {}};
    w.children.reserve(t.children().size());
    for (const ATerm& c : t.children()) w.children.push_back(all_match(c));
    return w;
}

WovenTree weave_rec(const ATerm& a, const ATerm& b, MatchScorer& scorer) {
    if (!a.same_head(b)) return WovenTree{WovenTree::Kind::Mismatch, a, b, {}};
    if (equal(a, b)) return all_match(a);
    WovenTree w{WovenTree::Kind::Match, a, b, {}};
    auto ca = a.children();
    auto cb = b.children();
    for (const auto& step : detail::align_children(a, b, scorer)) {
        switch (step.kind) {
            case detail::AlignStep::Kind::Pair:
                w.children.push_back(weave_rec(ca[step.i], cb[step.j], scorer));
                break;
            case detail::AlignStep::Kind::LeftOnly:
                w.children.push_back(
                    WovenTree{WovenTree::Kind::RightHole, ca[step.i], std::nullopt, {}});
                break;
            case detail::AlignStep::Kind::RightOnly:
                w.children.push_back(
                    WovenTree{WovenTree::Kind::LeftHole, std::nullopt, cb[step.j], {}});
                break;
        }
    }
    return w;
}

EditTree all_delete(const ATerm& t) {
    EditTree e{EditOp::Delete, t, {}};
    e.children.reserve(t.children().size());
    for (const ATerm& c : t.children()) e.children.push_back(all_delete(c));
    return e;
}

// Recovers the Keep/Delete pair the woven tree encodes.
void edits_from_woven(const WovenTree& w, EditTree* left, EditTree* right) {
    switch (w.kind) {
        case WovenTree::Kind::Match:
            if (left) *left = EditTree{EditOp::Keep, *w.left, {}};
            if (right) *right = EditTree{EditOp::Keep, *w.right, {}};
            for (const WovenTree& c : w.children) {
                EditTree cl{EditOp::Keep, *w.left, {}};
                EditTree cr{EditOp::Keep, *w.right, {}};
                bool has_left = c.kind != WovenTree::Kind::LeftHole;
                bool has_right = c.kind != WovenTree::Kind::RightHole;
                edits_from_woven(c, has_left ? &cl : nullptr, has_right ? &cr : nullptr);
                if (left && has_left) left->children.push_back(std::move(cl));
                if (right && has_right) right->children.push_back(std::move(cr));
            }
            return;
        case WovenTree::Kind::Mismatch:
            if (left) *left = all_delete(*w.left);
            if (right) *right = all_delete(*w.right);
            return;
        case WovenTree::Kind::LeftHole:
            if (right) *right = all_delete(*w.right);
            return;
        case WovenTree::Kind::RightHole:
            if (left) *left = all_delete(*w.left);
            return;
    }
}

bool edit_equal(const EditTree& x, const EditTree& y) {
    if (x.op != y.op || !equal(x.term, y.term)) return false;
    if (x.children.size() != y.children.size()) return false;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (!edit_equal(x.children[i], y.children[i])) return false;
    return true;
}

} // namespace

WovenTree weave_terms(const ATerm& a, const ATerm& b) {
    MatchScorer scorer;
    return weave_rec(a, b, scorer);
}

WovenTree weave(const EditTree& left_edit, const EditTree& right_edit) {
    ATerm a = erase_ops(left_edit);
    ATerm b = erase_ops(right_edit);
    WovenTree w = weave_terms(a, b);
    EditTree la{EditOp::Keep, a, {}};
    EditTree rb{EditOp::Keep, b, {}};
    edits_from_woven(w, &la, &rb);
    if (!edit_equal(la, left_edit) || !edit_equal(rb, right_edit))
        throw WeaveError("edit trees do not form a consistent pair");
    return w;
}

namespace {

ATerm rebuild(const ATerm& original, std::vector<ATerm> children) {
    switch (original.kind()) {
        case ATerm::Kind::Appl: return ATerm::appl(original.label(), std::move(children));
        case ATerm::Kind::List: return ATerm::list(std::move(children));
        case ATerm::Kind::Int: return original;
    }
    return original;
}

} // namespace

ATerm project_left(const WovenTree& w) {
    switch (w.kind) {
        case WovenTree::Kind::Match: {
            std::vector<ATerm> kids;
            kids.reserve(w.children.size());
            for (const WovenTree& c : w.children)
                if (c.kind != WovenTree::Kind::LeftHole) kids.push_back(project_left(c));
            return rebuild(*w.left, std::move(kids));
        }
        case WovenTree::Kind::Mismatch:
        case WovenTree::Kind::RightHole: return *w.left;
        case WovenTree::Kind::LeftHole: break;
    }
    throw WeaveError("left projection reached an insertion hole");
}

ATerm project_right(const WovenTree& w) {
    switch (w.kind) {
        case WovenTree::Kind::Match: {
            std::vector<ATerm> kids;
            kids.reserve(w.children.size());
            for (const WovenTree& c : w.children)
                if (c.kind != WovenTree::Kind::RightHole) kids.push_back(project_right(c));
            return rebuild(*w.right, std::move(kids));
        }
        case WovenTree::Kind::Mismatch:
        case WovenTree::Kind::LeftHole: return *w.right;
        case WovenTree::Kind::RightHole: break;
    }
    throw WeaveError("right projection reached a deletion hole");
}

namespace {

// Projections of each context node are shared by every change under it.
struct ContextCache {
    std::unordered_map<const WovenTree*, std::pair<ATerm, ATerm>> memo;

    const std::pair<ATerm, ATerm>& get(const WovenTree* node) {
        auto it = memo.find(node);
        if (it == memo.end())
            it = memo.emplace(node, std::make_pair(project_left(*node), project_right(*node)))
                     .first;
        return it->second;
    }
};

bool is_statement_match(const WovenTree& w, const LanguageProfile& profile) {
    return w.kind == WovenTree::Kind::Match && w.left->is_appl() &&
           profile.is_statement_label(w.left->label());
}

void extract_rec(const WovenTree& w, const LanguageProfile& profile,
                 const ChangeOrigin& origin, const WovenTree* ctx, ContextCache& cache,
                 std::vector<Change>& out) {
    if (w.kind == WovenTree::Kind::Match) {
        const WovenTree* next = is_statement_match(w, profile) ? &w : ctx;
        for (const WovenTree& c : w.children)
            extract_rec(c, profile, origin, next, cache, out);
        return;
    }
    Change change;
    change.origin = origin;
    switch (w.kind) {
        case WovenTree::Kind::Mismatch:
            change.kind = ChangeKind::Mutation;
            change.before = w.left;
            change.after = w.right;
            break;
        case WovenTree::Kind::LeftHole:
            change.kind = ChangeKind::Insertion;
            change.after = w.right;
            break;
        case WovenTree::Kind::RightHole:
            change.kind = ChangeKind::Deletion;
            change.before = w.left;
            break;
        case WovenTree::Kind::Match: break; // unreachable
    }
    const auto& projections = cache.get(ctx);
    change.context_before = projections.first;
    change.context_after = projections.second;
    out.push_back(std::move(change));
}

} // namespace

std::vector<Change> extract_changes(const WovenTree& w, const LanguageProfile& profile,
                                    const ChangeOrigin& origin) {
    std::vector<Change> out;
    ContextCache cache;
    extract_rec(w, profile, origin, &w, cache, out);
    return out;
}

} // namespace cpat
