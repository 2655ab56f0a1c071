#include "doctest.h"

#include <algorithm>

#include "cpat/antiunify.hpp"
#include "support/gen.hpp"

using namespace cpat;

namespace {

ATerm leaf(const char* l) { return ATerm::appl(l); }

ATerm ap(const char* l, std::vector<ATerm> cs) {
    return ATerm::appl(l, std::move(cs));
}

} // namespace

TEST_CASE("identical terms generalize to themselves") {
    ATerm t = ap("foo", {leaf("a"), leaf("b")});
    auto r = antiunify2(t, t);
    CHECK(metavar_count(r.tpl) == 0);
    CHECK(r.tpl == template_from_aterm(t));
    CHECK(r.left.empty());
    CHECK(r.right.empty());
    CHECK(equal(apply_substitution(r.tpl, {}), t));
}

TEST_CASE("single point of disagreement") {
    ATerm a = ap("foo", {leaf("a"), leaf("b")});
    ATerm b = ap("foo", {leaf("c"), leaf("b")});
    auto r = antiunify2(a, b);
    CHECK(r.tpl == Template::appl("foo", {Template::metavar(1),
                                          Template::appl("b")}));
    CHECK(equal(r.left.at(1), leaf("a")));
    CHECK(equal(r.right.at(1), leaf("c")));
    CHECK(equal(apply_substitution(r.tpl, r.left), a));
    CHECK(equal(apply_substitution(r.tpl, r.right), b));
}

TEST_CASE("repeated pairs share one metavariable") {
    // g(x, x) vs g(y, y): the pair (x, y) occurs twice -> one hole
    ATerm a = ap("g", {leaf("x"), leaf("x")});
    ATerm b = ap("g", {leaf("y"), leaf("y")});
    auto r = antiunify2(a, b);
    CHECK(r.tpl == Template::appl("g", {Template::metavar(1),
                                        Template::metavar(1)}));
    CHECK(metavar_count(r.tpl) == 1);
}

TEST_CASE("distinct pairs get distinct metavariables") {
    // g(x, x) vs g(c, d): (x, c) and (x, d) are different pairs
    ATerm a = ap("g", {leaf("x"), leaf("x")});
    ATerm b = ap("g", {leaf("c"), leaf("d")});
    auto r = antiunify2(a, b);
    CHECK(r.tpl == Template::appl("g", {Template::metavar(1),
                                        Template::metavar(2)}));
    CHECK(equal(apply_substitution(r.tpl, r.left), a));
    CHECK(equal(apply_substitution(r.tpl, r.right), b));
}

TEST_CASE("child count mismatch collapses the whole node") {
    ATerm a = ap("f", {leaf("a")});
    ATerm b = ap("f", {leaf("a"), leaf("b")});
    auto r = antiunify2(a, b);
    CHECK(r.tpl == Template::metavar(1));
    CHECK(equal(r.left.at(1), a));
    CHECK(equal(r.right.at(1), b));
}

TEST_CASE("integer leaves disagree into a hole") {
    ATerm a = ap("Lit", {ATerm::integer(0)});
    ATerm b = ap("Lit", {ATerm::integer(5)});
    auto r = antiunify2(a, b);
    CHECK(r.tpl == Template::appl("Lit", {Template::metavar(1)}));
}

TEST_CASE("metavariable numbering follows preorder first occurrence") {
    ATerm a = ap("h", {leaf("p"), ap("k", {leaf("q"), leaf("p")})});
    ATerm b = ap("h", {leaf("P"), ap("k", {leaf("Q"), leaf("P")})});
    auto r = antiunify2(a, b);
    // (p,P) first at position 0 -> var 1; (q,Q) second -> var 2; the
    // repeated (p,P) reuses var 1.
    CHECK(r.tpl ==
          Template::appl("h", {Template::metavar(1),
                               Template::appl("k", {Template::metavar(2),
                                                    Template::metavar(1)})}));
}

TEST_CASE("group generalization covers every member") {
    ATerm a = testsup::stmt_of("x = f(1);");
    ATerm b = testsup::stmt_of("x = f(2);");
    ATerm c = testsup::stmt_of("x = f(g);");
    auto r = antiunify_n({a, b, c});
    REQUIRE(r.members.size() == 3);
    CHECK(equal(apply_substitution(r.tpl, r.members[0]), a));
    CHECK(equal(apply_substitution(r.tpl, r.members[1]), b));
    CHECK(equal(apply_substitution(r.tpl, r.members[2]), c));
    CHECK(metavar_count(r.tpl) == 1);
}

TEST_CASE("group template ignores member order") {
    std::mt19937 rng(606);
    for (int it = 0; it < 50; ++it) {
        ATerm base = testsup::random_tree(rng, 10);
        std::vector<ATerm> members;
        for (int k = 0; k < 4; ++k)
            members.push_back(testsup::random_variant(rng, base,
                                                      1 + static_cast<int>(rng() % 4)));
        auto r1 = antiunify_n(members);
        std::vector<ATerm> shuffled = members;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto r2 = antiunify_n(shuffled);
        CHECK(r1.tpl == r2.tpl);
    }
}

TEST_CASE("random groups reconstruct and stay least general") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 250; ++it) {
        ATerm base = testsup::random_tree(rng, 1 + static_cast<int>(rng() % 12));
        std::size_t n = 2 + rng() % 4;
        std::vector<ATerm> members;
        for (std::size_t k = 0; k < n; ++k)
            members.push_back(
                rng() % 4 == 0 ? base
                               : testsup::random_variant(rng, base,
                                                         1 + static_cast<int>(rng() % 5)));
        auto r = antiunify_n(members);
        REQUIRE(r.members.size() == n);
        for (std::size_t k = 0; k < n; ++k)
            CHECK(equal(apply_substitution(r.tpl, r.members[k]), members[k]));
        // every metavariable is used by every member's substitution
        for (std::size_t k = 0; k < n; ++k)
            CHECK(static_cast<int>(r.members[k].size()) == metavar_count(r.tpl));
    }
}

TEST_CASE("pairwise agreement with the grouped form") {
    std::mt19937 rng(11);
    for (int it = 0; it < 100; ++it) {
        ATerm a = testsup::random_tree(rng, 1 + static_cast<int>(rng() % 10));
        ATerm b = testsup::random_tree(rng, 1 + static_cast<int>(rng() % 10));
        auto two = antiunify2(a, b);
        auto grp = antiunify_n({a, b});
        CHECK(two.tpl == grp.tpl);
        CHECK(equal(apply_substitution(grp.tpl, grp.members[0]), a));
        CHECK(equal(apply_substitution(grp.tpl, grp.members[1]), b));
    }
}

TEST_CASE("missing binding raises") {
    Template tpl = Template::appl("f", {Template::metavar(1)});
    try {
        apply_substitution(tpl, {});
        FAIL("expected SubstitutionError");
    } catch (const SubstitutionError& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("template rendering modes") {
    ATerm a = testsup::stmt_of("for (i = 0; i < n; i++) { g(); }");
    ATerm b = testsup::stmt_of("for (j = 0; j < m; j++) { h(); }");
    auto r = antiunify2(a, b);
    std::string plain = render_template(r.tpl, RenderMode::MiniLang);
    CHECK(plain == "for (□ = 0 ; □ < □ ; □++) { □(); }");
    std::string numbered = render_template(r.tpl, RenderMode::MiniLangNumbered);
    CHECK(numbered == "for (□_1 = 0 ; □_1 < □_2 ; □_1++) { □_3(); }");
    std::string aterm_mode = render_template(r.tpl, RenderMode::Aterm);
    CHECK(aterm_mode.find("AVar 1") != std::string::npos);
    CHECK(aterm_mode.find("ForStmt") != std::string::npos);
}

TEST_CASE("concrete templates render like source") {
    ATerm t = testsup::stmt_of("if (a == b) { return x; }");
    Template tpl = template_from_aterm(t);
    CHECK(render_template(tpl, RenderMode::MiniLang) ==
          "if (a == b) { return x; }");
}
