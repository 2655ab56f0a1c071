#include "cpat/antiunify.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

namespace cpat {

Template Template::appl(std::string label, std::vector<Template> children) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Appl;
    node->label = std::move(label);
    node->children = std::move(children);
    return Template(std::move(node));
}

Template Template::list(std::vector<Template> children) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::List;
    node->children = std::move(children);
    return Template(std::move(node));
}

Template Template::integer(long long value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Int;
    node->value = value;
    return Template(std::move(node));
}

Template Template::metavar(int index) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::MetaVar;
    node->var_index = index;
    return Template(std::move(node));
}

const std::string& Template::label() const {
    assert(kind() == Kind::Appl);
    return node_->label;
}

long long Template::value() const {
    assert(kind() == Kind::Int);
    return node_->value;
}

int Template::var_index() const {
    assert(is_metavar());
    return node_->var_index;
}

bool Template::operator==(const Template& other) const {
    if (node_.get() == other.node_.get()) return true;
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case Kind::Appl:
            if (node_->label != other.node_->label) return false;
            break;
        case Kind::Int: return node_->value == other.node_->value;
        case Kind::MetaVar: return node_->var_index == other.node_->var_index;
        case Kind::List: break;
    }
    auto ca = children();
    auto cb = other.children();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (!(ca[i] == cb[i])) return false;
    return true;
}

Template template_from_aterm(const ATerm& t) {
    switch (t.kind()) {
        case ATerm::Kind::Int: return Template::integer(t.value());
        case ATerm::Kind::Appl:
        case ATerm::Kind::List: {
            std::vector<Template> kids;
            kids.reserve(t.children().size());
            for (const ATerm& c : t.children()) kids.push_back(template_from_aterm(c));
            return t.is_appl() ? Template::appl(t.label(), std::move(kids))
                               : Template::list(std::move(kids));
        }
    }
    return Template::integer(0); // unreachable
}

namespace {

void collect_vars(const Template& t, std::set<int>& out) {
    if (t.is_metavar()) {
        out.insert(t.var_index());
        return;
    }
    for (const Template& c : t.children()) collect_vars(c, out);
}

} // namespace

int metavar_count(const Template& t) {
    std::set<int> vars;
    collect_vars(t, vars);
    return static_cast<int>(vars.size());
}

SubstitutionError::SubstitutionError(int idx)
    : std::runtime_error("substitution has no binding for metavariable " +
                         std::to_string(idx)),
      index(idx) {}

ATerm apply_substitution(const Template& tpl, const Substitution& s) {
    switch (tpl.kind()) {
        case Template::Kind::MetaVar: {
            auto it = s.find(tpl.var_index());
            if (it == s.end()) throw SubstitutionError(tpl.var_index());
            return it->second;
        }
        case Template::Kind::Int: return ATerm::integer(tpl.value());
        case Template::Kind::Appl:
        case Template::Kind::List: {
            std::vector<ATerm> kids;
            kids.reserve(tpl.children().size());
            for (const Template& c : tpl.children())
                kids.push_back(apply_substitution(c, s));
            return tpl.kind() == Template::Kind::Appl
                       ? ATerm::appl(tpl.label(), std::move(kids))
                       : ATerm::list(std::move(kids));
        }
    }
    throw SubstitutionError(0); // unreachable
}

namespace {

// One pairwise generalization step. Metavariables are allocated per ordered
// pair of disagreeing subtrees, so a pair seen twice reuses its variable.
struct LggState {
    std::map<std::pair<std::string, std::string>, int> vars;
    int next = 1;
};

int max_var_index(const Template& t) {
    if (t.is_metavar()) return t.var_index();
    int best = 0;
    for (const Template& c : t.children()) best = std::max(best, max_var_index(c));
    return best;
}

Template lgg_step(const Template& s, const ATerm& t, LggState& st) {
    bool same_shape = false;
    switch (s.kind()) {
        case Template::Kind::Appl:
            same_shape = t.is_appl() && s.label() == t.label() &&
                         s.children().size() == t.children().size();
            break;
        case Template::Kind::List:
            same_shape = t.is_list() && s.children().size() == t.children().size();
            break;
        case Template::Kind::Int: same_shape = t.is_int() && s.value() == t.value(); break;
        case Template::Kind::MetaVar: break;
    }
    if (same_shape) {
        if (s.kind() == Template::Kind::Int) return s;
        std::vector<Template> kids;
        kids.reserve(s.children().size());
        for (std::size_t i = 0; i < s.children().size(); ++i)
            kids.push_back(lgg_step(s.children()[i], t.children()[i], st));
        return s.kind() == Template::Kind::Appl ? Template::appl(s.label(), std::move(kids))
                                                : Template::list(std::move(kids));
    }
    auto key = std::make_pair(render_template(s, RenderMode::Aterm), render_aterm(t));
    auto [it, inserted] = st.vars.try_emplace(std::move(key), st.next);
    if (inserted) ++st.next;
    return Template::metavar(it->second);
}

Template renumber(const Template& t, std::unordered_map<int, int>& remap, int& next) {
    if (t.is_metavar()) {
        auto [it, inserted] = remap.try_emplace(t.var_index(), next);
        if (inserted) ++next;
        return Template::metavar(it->second);
    }
    if (t.kind() == Template::Kind::Int) return t;
    std::vector<Template> kids;
    kids.reserve(t.children().size());
    for (const Template& c : t.children()) kids.push_back(renumber(c, remap, next));
    return t.kind() == Template::Kind::Appl ? Template::appl(t.label(), std::move(kids))
                                            : Template::list(std::move(kids));
}

Template normalize_vars(const Template& t) {
    std::unordered_map<int, int> remap;
    int next = 1;
    return renumber(t, remap, next);
}

// Derives the substitution that instantiates tpl to t. The template is a
// generalization of t by construction, so a shape clash is a logic error.
void match_bind(const Template& tpl, const ATerm& t, Substitution& out) {
    if (tpl.is_metavar()) {
        auto [it, inserted] = out.try_emplace(tpl.var_index(), t);
        if (!inserted && !equal(it->second, t))
            throw std::logic_error("template does not generalize its member");
        return;
    }
    bool ok = false;
    switch (tpl.kind()) {
        case Template::Kind::Appl:
            ok = t.is_appl() && tpl.label() == t.label() &&
                 tpl.children().size() == t.children().size();
            break;
        case Template::Kind::List:
            ok = t.is_list() && tpl.children().size() == t.children().size();
            break;
        case Template::Kind::Int: ok = t.is_int() && tpl.value() == t.value(); break;
        case Template::Kind::MetaVar: break;
    }
    if (!ok) throw std::logic_error("template does not generalize its member");
    for (std::size_t i = 0; i < tpl.children().size(); ++i)
        match_bind(tpl.children()[i], t.children()[i], out);
}

} // namespace

PairAntiunification antiunify2(const ATerm& a, const ATerm& b) {
    LggState st;
    Template tpl = normalize_vars(lgg_step(template_from_aterm(a), b, st));
    PairAntiunification out{std::move(tpl), {}, {}};
    match_bind(out.tpl, a, out.left);
    match_bind(out.tpl, b, out.right);
    return out;
}

GroupAntiunification antiunify_n(const std::vector<ATerm>& group) {
    if (group.empty()) throw std::invalid_argument("antiunify_n: empty group");
    std::vector<std::size_t> order(group.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::string> rendered;
    rendered.reserve(group.size());
    for (const ATerm& t : group) rendered.push_back(render_aterm(t));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return rendered[x] < rendered[y]; });

    Template tpl = template_from_aterm(group[order[0]]);
    for (std::size_t k = 1; k < order.size(); ++k) {
        LggState st;
        st.next = max_var_index(tpl) + 1;
        tpl = lgg_step(tpl, group[order[k]], st);
    }
    GroupAntiunification out{normalize_vars(tpl), {}};
    out.members.reserve(group.size());
    for (const ATerm& member : group) {
        Substitution s;
        match_bind(out.tpl, member, s);
        out.members.push_back(std::move(s));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_label_escaped(const std::string& label, std::string& out) {
    out.push_back('"');
    for (char c : label) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
}

void render_tpl_aterm(const Template& t, std::string& out) {
    switch (t.kind()) {
        case Template::Kind::MetaVar:
            out += "AVar ";
            out += std::to_string(t.var_index());
            return;
        case Template::Kind::Int:
            out += "AInt ";
            out += std::to_string(t.value());
            return;
        case Template::Kind::Appl:
            out += "AAppl ";
            render_label_escaped(t.label(), out);
            out.push_back(' ');
            break;
        case Template::Kind::List: out += "AList "; break;
    }
    out.push_back('[');
    bool first = true;
    for (const Template& c : t.children()) {
        if (!first) out += ", ";
        first = false;
        render_tpl_aterm(c, out);
    }
    out.push_back(']');
}

// Unparses templates over the MiniLang vocabulary back to source-like text.
// Anything outside the vocabulary is printed as flagged aterm text.
class SourcePrinter {
public:
    explicit SourcePrinter(RenderMode mode) : numbered_(mode == RenderMode::MiniLangNumbered) {}

    std::string top(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (t.kind() == Template::Kind::Int) return std::to_string(t.value());
        if (is(t, "CompilationUnit", 1)) return unit_items(t.children()[0]);
        if (t.kind() == Template::Kind::Appl && is_stmt_label(t.label())) return stmt(t);
        if (t.kind() == Template::Kind::Appl) return expr(t, 0);
        return fallback(t);
    }

private:
    bool numbered_;

    static bool is(const Template& t, std::string_view label, std::size_t arity) {
        return t.kind() == Template::Kind::Appl && t.label() == label &&
               t.children().size() == arity;
    }

    static bool is_stmt_label(const std::string& l) {
        return l == "ExpStmt" || l == "LocalVarDecl" || l == "IfStmt" || l == "WhileStmt" ||
               l == "ForStmt" || l == "Return" || l == "Block" || l == "MethodDecl";
    }

    std::string meta(const Template& t) {
        return numbered_ ? "□_" + std::to_string(t.var_index()) : "□";
    }

    std::string fallback(const Template& t) {
        std::string out = "⟨aterm: ";
        render_tpl_aterm(t, out);
        out += "⟩";
        return out;
    }

    std::string unit_items(const Template& items) {
        if (items.is_metavar()) return meta(items);
        if (items.kind() != Template::Kind::List) return fallback(items);
        std::string out;
        bool first = true;
        for (const Template& c : items.children()) {
            if (!first) out += "\n";
            first = false;
            out += stmt(c);
        }
        return out;
    }

    std::string block(const Template& t) {
        if (t.is_metavar()) return "{ " + meta(t) + " }";
        if (t.kind() != Template::Kind::List) return "{ " + fallback(t) + " }";
        if (t.children().empty()) return "{ }";
        std::string out = "{ ";
        bool first = true;
        for (const Template& c : t.children()) {
            if (!first) out += " ";
            first = false;
            out += stmt(c);
        }
        out += " }";
        return out;
    }

    std::string stmt(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (t.kind() != Template::Kind::Appl) return fallback(t);
        const std::string& l = t.label();
        auto c = t.children();
        if (l == "ExpStmt" && c.size() == 1) return expr(c[0], 0) + ";";
        if (l == "LocalVarDecl" && (c.size() == 2 || c.size() == 3)) {
            std::string out = type_name(c[0]) + " " + ident(c[1]);
            if (c.size() == 3) out += " = " + expr(c[2], 1);
            return out + ";";
        }
        if (l == "IfStmt" && (c.size() == 2 || c.size() == 3)) {
            std::string out = "if (" + expr(c[0], 0) + ") " + block(c[1]);
            if (c.size() == 3) out += " else " + block(c[2]);
            return out;
        }
        if (l == "WhileStmt" && c.size() == 2)
            return "while (" + expr(c[0], 0) + ") " + block(c[1]);
        if (l == "ForStmt" && c.size() == 1) return for_stmt(c[0]);
        if (l == "Return" && c.empty()) return "return;";
        if (l == "Return" && c.size() == 1) return "return " + expr(c[0], 0) + ";";
        if (l == "Block" && c.size() == 1) return block(c[0]);
        if (l == "MethodDecl" && c.size() == 4) {
            std::string out = type_name(c[0]) + " " + ident(c[1]) + "(" + params(c[2]) + ") ";
            if (is(c[3], "Block", 1)) out += block(c[3].children()[0]);
            else if (c[3].is_metavar()) out += meta(c[3]);
            else out += fallback(c[3]);
            return out;
        }
        return fallback(t);
    }

    std::string for_stmt(const Template& inner) {
        if (inner.is_metavar()) return "for " + meta(inner);
        if (is(inner, "BasicFor", 4)) {
            auto c = inner.children();
            return "for (" + for_clause(c[0]) + " ; " + for_clause(c[1]) + " ; " +
                   for_clause(c[2]) + ") " + block(c[3]);
        }
        if (is(inner, "ForEach", 4)) {
            auto c = inner.children();
            return "for (" + type_name(c[0]) + " " + ident(c[1]) + " : " + expr(c[2], 0) +
                   ") " + block(c[3]);
        }
        return "for " + fallback(inner);
    }

    std::string for_clause(const Template& t) {
        if (t.kind() == Template::Kind::List && t.children().empty()) return "";
        if (t.kind() == Template::Kind::Appl && t.label() == "LocalVarDecl" &&
            (t.children().size() == 2 || t.children().size() == 3)) {
            auto c = t.children();
            std::string out = type_name(c[0]) + " " + ident(c[1]);
            if (c.size() == 3) out += " = " + expr(c[2], 1);
            return out;
        }
        return expr(t, 0);
    }

    std::string params(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (t.kind() != Template::Kind::List) return fallback(t);
        std::string out;
        bool first = true;
        for (const Template& p : t.children()) {
            if (!first) out += ", ";
            first = false;
            if (is(p, "Param", 2))
                out += type_name(p.children()[0]) + " " + ident(p.children()[1]);
            else if (p.is_metavar()) out += meta(p);
            else out += fallback(p);
        }
        return out;
    }

    // Leaf labels carry their quotes; strip one surrounding pair.
    static std::string strip_quotes(const std::string& label) {
        if (label.size() >= 2 && label.front() == '"' && label.back() == '"')
            return label.substr(1, label.size() - 2);
        return label;
    }

    std::string ident(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (is(t, "Ident", 1)) {
            const Template& leaf = t.children()[0];
            if (leaf.is_metavar()) return meta(leaf);
            if (leaf.kind() == Template::Kind::Appl && leaf.children().empty())
                return strip_quotes(leaf.label());
        }
        return fallback(t);
    }

    std::string type_name(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (is(t, "Type", 1)) {
            const Template& leaf = t.children()[0];
            if (leaf.is_metavar()) return meta(leaf);
            if (leaf.kind() == Template::Kind::Appl && leaf.children().empty())
                return strip_quotes(leaf.label());
        }
        return fallback(t);
    }

    struct BinOp {
        const char* text;
        int prec;
        bool right_assoc;
    };

    static const BinOp* bin_op(const std::string& label) {
        static const std::unordered_map<std::string, BinOp> ops = {
            {"Assign", {"=", 1, true}}, {"AddAssign", {"+=", 1, true}},
            {"SubAssign", {"-=", 1, true}}, {"Eq", {"==", 2, false}},
            {"Neq", {"!=", 2, false}}, {"Lt", {"<", 3, false}},
            {"Gt", {">", 3, false}}, {"Le", {"<=", 3, false}},
            {"Ge", {">=", 3, false}}, {"Add", {"+", 4, false}},
            {"Sub", {"-", 4, false}}, {"Mul", {"*", 5, false}},
            {"Div", {"/", 5, false}}, {"Rem", {"%", 5, false}},
        };
        auto it = ops.find(label);
        return it == ops.end() ? nullptr : &it->second;
    }

    static constexpr int kPostfix = 6;

    std::string expr(const Template& t, int min_prec) {
        if (t.is_metavar()) return meta(t);
        if (t.kind() == Template::Kind::Int) return std::to_string(t.value());
        if (t.kind() != Template::Kind::Appl) return fallback(t);
        const std::string& l = t.label();
        auto c = t.children();
        if (l == "ExpName" && c.size() == 1) return name(c[0]);
        if (l == "Lit" && c.size() == 1) return literal(c[0]);
        if (l == "FieldAccess" && c.size() == 2)
            return expr(c[0], kPostfix) + "." + ident(c[1]);
        if (l == "ArrayIndex" && c.size() == 2)
            return expr(c[0], kPostfix) + "[" + expr(c[1], 0) + "]";
        if (l == "MethodInv" && c.size() == 2) return callee(c[0]) + "(" + args(c[1]) + ")";
        if (l == "PostIncrement" && c.size() == 1) return expr(c[0], kPostfix) + "++";
        if (l == "PostDecrement" && c.size() == 1) return expr(c[0], kPostfix) + "--";
        if (const BinOp* op = bin_op(l); op && c.size() == 2) {
            std::string s = expr(c[0], op->right_assoc ? op->prec + 1 : op->prec);
            s += " ";
            s += op->text;
            s += " ";
            s += expr(c[1], op->right_assoc ? op->prec : op->prec + 1);
            if (op->prec < min_prec) return "(" + s + ")";
            return s;
        }
        return fallback(t);
    }

    std::string name(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (is(t, "Name", 1)) return ident(t.children()[0]);
        return fallback(t);
    }

    std::string literal(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (t.kind() == Template::Kind::Int) return std::to_string(t.value());
        if (t.kind() == Template::Kind::Appl && t.children().empty()) return t.label();
        return fallback(t);
    }

    std::string callee(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (is(t, "Name", 1)) return ident(t.children()[0]);
        if (is(t, "FieldAccess", 2))
            return expr(t.children()[0], kPostfix) + "." + ident(t.children()[1]);
        return fallback(t);
    }

    std::string args(const Template& t) {
        if (t.is_metavar()) return meta(t);
        if (t.kind() != Template::Kind::List) return fallback(t);
        std::string out;
        bool first = true;
        for (const Template& a : t.children()) {
            if (!first) out += ", ";
            first = false;
            out += expr(a, 1);
        }
        return out;
    }
};

} // namespace

std::string render_template(const Template& tpl, RenderMode mode) {
    if (mode == RenderMode::Aterm) {
        std::string out;
        render_tpl_aterm(tpl, out);
        return out;
    }
    return SourcePrinter(mode).top(tpl);
}

} // namespace cpat
