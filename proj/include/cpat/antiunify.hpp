#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpat/aterm.hpp"

namespace cpat {

// A term with holes: the ATerm variants plus MetaVar placeholders. Metavar
// indices in a finished template run 1..n in preorder first-occurrence order.
class Template {
public:
    enum class Kind { Appl, List, Int, MetaVar };

    static Template appl(std::string label, std::vector<Template> children = {});
    static Template list(std::vector<Template> children = {});
    static Template integer(long long value);
    static Template metavar(int index);

    Kind kind() const { return node_->kind; }
    bool is_metavar() const { return node_->kind == Kind::MetaVar; }

    const std::string& label() const; // Appl only
    long long value() const;          // Int only
    int var_index() const;            // MetaVar only

    std::span<const Template> children() const { return node_->children; }

    bool operator==(const Template& other) const;
    bool operator!=(const Template& other) const { return !(*this == other); }

private:
    struct Node {
        Kind kind;
        long long value = 0;
        int var_index = 0;
        std::string label;
        std::vector<Template> children;
    };

    explicit Template(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Lifts a concrete term into a metavariable-free template.
Template template_from_aterm(const ATerm& t);

// Number of distinct metavariables (0 for a concrete template).
int metavar_count(const Template& t);

// Metavariable index -> subtree bound at that hole.
using Substitution = std::map<int, ATerm>;

struct SubstitutionError : std::runtime_error {
    explicit SubstitutionError(int index);
    int index;
};

// Replaces every metavariable with its binding. Throws SubstitutionError
// (naming the index) when a metavariable has no binding.
ATerm apply_substitution(const Template& tpl, const Substitution& s);

struct PairAntiunification {
    Template tpl;
    Substitution left;
    Substitution right;
};

// Least general generalization of two terms. Recurses where variant,
// label/value, and child count all agree; any other position becomes a
// metavariable, and the same ordered pair of mismatched subtrees always maps
// to the same metavariable. apply_substitution(tpl, left) == a, and likewise
// for b.
PairAntiunification antiunify2(const ATerm& a, const ATerm& b);

struct GroupAntiunification {
    Template tpl;
    std::vector<Substitution> members; // one per input, in input order
};

// lgg of a non-empty group: a left fold of the pairwise step over the members
// in canonical order (sorted by rendered aterm text), metavariables
// renumbered by preorder first occurrence, and substitutions re-derived
// against the final template. Input order does not affect the template.
GroupAntiunification antiunify_n(const std::vector<ATerm>& group);

enum class RenderMode {
    Aterm,            // metavariables print as `AVar k`
    MiniLang,         // source-like text; every metavariable prints as `□`
    MiniLangNumbered, // source-like text with `□_k` placeholders
};

// Pretty-prints a template. MiniLang modes unparse nodes whose labels belong
// to the MiniLang vocabulary; any other subtree falls back to aterm text
// wrapped in ⟨aterm: …⟩ so the reader can tell it was not unparsed.
std::string render_template(const Template& tpl, RenderMode mode);

} // namespace cpat
