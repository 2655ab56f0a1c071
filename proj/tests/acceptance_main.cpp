// End-to-end acceptance suite. Exercises the library against brute-force
// oracles, crafted fixture repositories, and the shipped CLI binary.
//
// Usage: cpat_acceptance DATA_DIR CLI_PATH
//   DATA_DIR  directory holding the demo-* snapshot corpora
//   CLI_PATH  path to the built cpat executable
//
// Prints one PASS/FAIL line per criterion; exit code is the failure count.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cpat/antiunify.hpp"
#include "cpat/pipeline.hpp"
#include "cpat/profile.hpp"
#include "cpat/similarity.hpp"
#include "cpat/tree_diff.hpp"
#include "cpat/vcs.hpp"
#include "cpat/weave.hpp"
#include "support/gen.hpp"

namespace fs = std::filesystem;
using namespace cpat;

namespace {

fs::path g_data_dir;
std::string g_cli_path;

struct Check {
    int failures = 0;
    std::string notes;

    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failures;
        if (notes.size() < 1500) notes += "\n        " + what;
    }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Replays DATA_DIR/<name>/step1..stepN as commits of a fresh repository.
fs::path snapshot_repo(const std::string& name) {
    fs::path snap = g_data_dir / name;
    fs::path repo = testsup::fresh_dir("accept-" + name);
    testsup::init_repo(repo);
    std::vector<fs::path> steps;
    for (const auto& entry : fs::directory_iterator(snap))
        if (entry.is_directory()) steps.push_back(entry.path());
    std::sort(steps.begin(), steps.end());
    for (const auto& step : steps) {
        for (const auto& f : fs::directory_iterator(step))
            if (f.is_regular_file())
                testsup::write_file(repo / f.path().filename(), read_file(f.path()));
        testsup::commit_all(repo, "apply " + step.filename().string());
    }
    return repo;
}

std::size_t index_of(const std::vector<std::string>& ids, const std::string& id) {
    return static_cast<std::size_t>(
        std::find(ids.begin(), ids.end(), id) - ids.begin());
}

// 1. delta is a normalized symmetric similarity with delta(t,t) = 1.
void metric_laws(Check& ck) {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> size_d(1, 50);
    for (int i = 0; i < 1000; ++i) {
        ATerm a = testsup::random_tree(rng, size_d(rng));
        ATerm b = testsup::random_tree(rng, size_d(rng));
        double ab = delta(a, b);
        ck.expect(ab >= 0.0 && ab <= 1.0, "delta out of [0,1]: " + std::to_string(ab));
        ck.expect(ab == delta(b, a), "delta not exactly symmetric");
        ck.expect(delta(a, a) == 1.0, "delta(t,t) != 1 exactly");
    }
}

// 2. match_score equals the brute-force best order-preserving embedding on
// every pair drawn from a pool of distinct trees of at most 7 nodes, and the
// edit trees carry exactly that many Keep nodes.
void diff_oracle(Check& ck) {
    std::vector<ATerm> trees;
    std::set<std::string> seen;
    auto add = [&](const ATerm& t) {
        if (seen.insert(render_aterm(t)).second) trees.push_back(t);
    };
    std::vector<ATerm> leaves;
    for (long long v = 0; v <= 2; ++v) leaves.push_back(ATerm::integer(v));
    for (const char* l : {"A", "B", "C"}) leaves.push_back(ATerm::appl(l));
    leaves.push_back(ATerm::list({}));
    for (const ATerm& l : leaves) add(l); // every 1-node tree over the alphabet
    for (const char* pl : {"A", "B", "C"})
        for (const ATerm& c : leaves) add(ATerm::appl(pl, {c}));
    for (const ATerm& c : leaves) add(ATerm::list({c})); // every 2-node tree
    std::mt19937 rng(202);
    for (int guard = 0; trees.size() < 71 && guard < 100000; ++guard)
        add(testsup::random_tree(rng, 3 + guard % 5));
    ck.expect(trees.size() == 71, "tree pool not filled");

    std::size_t pairs = 0;
    for (const ATerm& a : trees) {
        for (const ATerm& b : trees) {
            ++pairs;
            std::size_t got = match_score(a, b);
            int want = testsup::oracle_match_score(a, b);
            if (got != static_cast<std::size_t>(want)) {
                ck.expect(false, "score " + std::to_string(got) + " != oracle " +
                                     std::to_string(want) + " for " + render_aterm(a) +
                                     " vs " + render_aterm(b));
                continue;
            }
            auto [left, right] = edit_trees(a, b);
            ck.expect(keep_count(left) == got && keep_count(right) == got,
                      "edit-tree Keep count != match score for " + render_aterm(a) +
                          " vs " + render_aterm(b));
        }
    }
    ck.expect(pairs >= 5000, "only " + std::to_string(pairs) + " pairs checked");
}

// 3. Weaving two trees and projecting each side back reproduces the inputs.
void weave_projections(Check& ck) {
    std::mt19937 rng(303);
    std::uniform_int_distribution<int> size_d(1, 25);
    for (int i = 0; i < 1000; ++i) {
        ATerm a = testsup::random_tree(rng, size_d(rng));
        ATerm b = (i % 2 == 0) ? testsup::random_variant(rng, a, 3)
                               : testsup::random_tree(rng, size_d(rng));
        WovenTree w = weave_terms(a, b);
        ck.expect(render_aterm(project_left(w)) == render_aterm(a),
                  "left projection differs from input");
        ck.expect(render_aterm(project_right(w)) == render_aterm(b),
                  "right projection differs from input");
    }
}

// 4. Every group member is template + its own substitution; all-identical
// groups generalize without any metavariable.
void reconstruction(Check& ck) {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> size_d(2, 20);
    std::uniform_int_distribution<int> count_d(2, 6);
    for (int g = 0; g < 1000; ++g) {
        int n = count_d(rng);
        ATerm base = testsup::random_tree(rng, size_d(rng));
        bool identical = g % 10 == 0;
        std::vector<ATerm> members;
        for (int i = 0; i < n; ++i)
            members.push_back(identical ? base : testsup::random_variant(rng, base, 2));
        GroupAntiunification res = antiunify_n(members);
        ck.expect(res.members.size() == members.size(), "one substitution per member");
        for (std::size_t i = 0; i < members.size(); ++i)
            ck.expect(apply_substitution(res.tpl, res.members[i]) == members[i],
                      "template + substitution does not rebuild member");
        if (identical)
            ck.expect(metavar_count(res.tpl) == 0,
                      "identical members still produced metavariables");
    }
}

std::vector<Change> changes_between(const std::string& before, const std::string& after,
                                    const LanguageProfile& prof) {
    WovenTree w = weave_terms(testsup::parse_unit(before), testsup::parse_unit(after));
    return extract_changes(w, prof, ChangeOrigin{"mem.mini", "old", "new"});
}

// 5. tau=0 collapses each kind to one group whose template over
// dissimilar-rooted contexts is a single metavariable; tau=1 keeps only
// singletons or identical-tree sets, with concrete templates.
void threshold_endpoints(Check& ck) {
    LanguageProfile prof = default_minilang_profile();
    std::vector<Change> all;
    auto absorb = [&](std::vector<Change> v) {
        for (Change& c : v) all.push_back(std::move(c));
    };
    // Two mutations with differing context roots (IfStmt / Return), plus a
    // second file whose mutated if-statement context is identical to the
    // first one, so tau=1 has a genuine 2-member identical set.
    absorb(changes_between("void f() { if (a == b) { x = 1; } return y; }",
                           "void f() { if (a == c) { x = 1; } return z; }", prof));
    absorb(changes_between("void h() { if (a == b) { x = 1; } }",
                           "void h() { if (a == c) { x = 1; } }", prof));
    // Two insertions with differing context roots (WhileStmt / Block).
    absorb(changes_between("void g() { while (p) { run(); } }",
                           "void g() { while (p) { run(); log(1); } f(); }", prof));
    // Two deletions with differing context roots (ForStmt / Block).
    absorb(changes_between(
        "void k() { for (i = 0 ; i < n ; i++) { step(); stop(); } done(); }",
        "void k() { for (i = 0 ; i < n ; i++) { step(); } }", prof));

    for (ChangeKind kind :
         {ChangeKind::Insertion, ChangeKind::Deletion, ChangeKind::Mutation}) {
        std::string kn = change_kind_name(kind);
        std::vector<Change> of_kind;
        for (const Change& c : all)
            if (c.kind == kind) of_kind.push_back(c);
        ck.expect(of_kind.size() >= 2, kn + ": fixture yielded fewer than 2 changes");

        DistanceMatrix d = distance_matrix(of_kind, kind, SideRule::After);
        std::vector<ChangeGroup> low = threshold_groups(d, 0.0);
        ck.expect(low.size() == 1, kn + ": tau=0 gave " + std::to_string(low.size()) +
                                       " groups instead of 1");
        std::vector<ATerm> reps;
        for (const Change& c : of_kind) reps.push_back(rep_tree(c, SideRule::After));
        GroupAntiunification whole = antiunify_n(reps);
        ck.expect(whole.tpl == Template::metavar(1),
                  kn + ": tau=0 template is not the single metavariable");

        std::vector<ChangeGroup> high = threshold_groups(d, 1.0);
        std::size_t multi = 0;
        for (const ChangeGroup& grp : high) {
            std::vector<ATerm> trees;
            for (const std::string& id : grp.members)
                trees.push_back(rep_tree(of_kind[index_of(d.items, id)], SideRule::After));
            if (trees.size() > 1) {
                ++multi;
                for (const ATerm& t : trees)
                    ck.expect(t == trees.front(),
                              kn + ": tau=1 multi-member group with unequal trees");
            }
            GroupAntiunification res = antiunify_n(trees);
            ck.expect(metavar_count(res.tpl) == 0,
                      kn + ": tau=1 template still has metavariables");
        }
        if (kind == ChangeKind::Mutation)
            ck.expect(multi == 1, "mutations: expected exactly one identical pair at tau=1");
        else
            ck.expect(multi == 0, kn + ": dissimilar contexts should all be singletons");
    }
}

// 6. Group counts never decrease as tau rises across a full 0..1 sweep.
void monotone_sweep(Check& ck) {
    fs::path repo = snapshot_repo("demo-forloops");
    RunConfig cfg;
    cfg.repo_path = repo.string();
    cfg.tau = 0.25;
    cfg.tau_sweep = SweepSpec{0.0, 1.0, 0.01};
    SystemProcessRunner runner;
    RunReport rep = run_pipeline(cfg, runner);
    ck.expect(rep.sweep.size() == 101,
              "expected 101 sweep rows, got " + std::to_string(rep.sweep.size()));
    for (std::size_t i = 1; i < rep.sweep.size(); ++i) {
        const SweepRow& prev = rep.sweep[i - 1];
        const SweepRow& cur = rep.sweep[i];
        ck.expect(cur.insertions >= prev.insertions, "insertion group count decreased");
        ck.expect(cur.deletions >= prev.deletions, "deletion group count decreased");
        ck.expect(cur.mutations >= prev.mutations, "mutation group count decreased");
    }
    ck.expect(!rep.sweep.empty() && rep.sweep.front().total >= 1, "sweep saw no groups");
}

// 7. The for-loop corpus generalizes to the three expected templates as tau
// tightens, and the shipped CLI reproduces the middle step.
void forloop_progression(Check& ck) {
    fs::path repo = snapshot_repo("demo-forloops");
    SystemProcessRunner runner;
    struct Step {
        double tau;
        std::size_t group_count;
        std::size_t members;
        std::string tpl;
    };
    const std::vector<Step> steps = {
        {0.15, 1, 12, "for (□ = □ ; □ < □ ; □) { □ }"},
        {0.25, 2, 8, "for (□ = 0 ; □ < □ ; □) { □ }"},
        {0.35, 3, 4, "for (□ = 0 ; □ < □.□ ; □) { □ }"},
    };
    for (const Step& step : steps) {
        RunConfig cfg;
        cfg.repo_path = repo.string();
        cfg.tau = step.tau;
        RunReport rep = run_pipeline(cfg, runner);
        ck.expect(rep.groups.size() == step.group_count,
                  "tau=" + std::to_string(step.tau) + ": got " +
                      std::to_string(rep.groups.size()) + " groups, expected " +
                      std::to_string(step.group_count));
        bool found = false;
        for (const GroupReport& g : rep.groups)
            if (g.member_indices.size() == step.members &&
                render_template(g.tpl, RenderMode::MiniLang) == step.tpl)
                found = true;
        ck.expect(found, "tau=" + std::to_string(step.tau) + ": no group of " +
                             std::to_string(step.members) + " members rendering as " +
                             step.tpl);
    }

    fs::path out = testsup::fresh_dir("accept-progression-cli");
    ProcessRunner::Result res = runner.run({g_cli_path, "run", "--repo", repo.string(),
                                            "--tau", "0.25", "--out", out.string()});
    ck.expect(res.exit_code == 0,
              "cli exited with " + std::to_string(res.exit_code));
    std::string patterns = read_file(out / "patterns.txt");
    ck.expect(patterns.find(steps[1].tpl) != std::string::npos,
              "cli patterns.txt lacks the expected template");
}

// 8. The same statement deleted inside two differing loops groups together
// at a low tau and splits into two groups at a higher one.
void crossfile_split(Check& ck) {
    fs::path repo = snapshot_repo("demo-crossfile");
    SystemProcessRunner runner;
    auto deletion_groups = [](const RunReport& r) {
        std::vector<const GroupReport*> v;
        for (const GroupReport& g : r.groups)
            if (g.kind == ChangeKind::Deletion) v.push_back(&g);
        return v;
    };

    RunConfig cfg;
    cfg.repo_path = repo.string();
    cfg.tau = 0.01;
    RunReport lo = run_pipeline(cfg, runner);
    ck.expect(lo.changes.size() == 2,
              "expected 2 changes, got " + std::to_string(lo.changes.size()));
    for (const Change& c : lo.changes)
        ck.expect(c.kind == ChangeKind::Deletion, "non-deletion change in fixture");
    if (lo.changes.size() == 2 && lo.changes[0].before && lo.changes[1].before)
        ck.expect(*lo.changes[0].before == *lo.changes[1].before,
                  "the two deleted statements are not identical");
    auto lo_del = deletion_groups(lo);
    ck.expect(lo_del.size() == 1 && lo_del[0]->member_indices.size() == 2,
              "tau=0.01: expected one deletion group holding both changes");

    cfg.tau = 0.5;
    RunReport hi = run_pipeline(cfg, runner);
    auto hi_del = deletion_groups(hi);
    ck.expect(hi_del.size() == 2, "tau=0.5: expected the group to split into 2, got " +
                                      std::to_string(hi_del.size()));
}

// 9. Commits that only reflow whitespace or drop optional braces yield no
// change records at all.
void layout_neutrality(Check& ck) {
    fs::path repo = snapshot_repo("demo-layout");
    SystemProcessRunner runner;
    RunConfig cfg;
    cfg.repo_path = repo.string();
    cfg.tau = 0.5;
    RunReport rep = run_pipeline(cfg, runner);
    ck.expect(rep.changes.empty(),
              "layout-only commits produced " + std::to_string(rep.changes.size()) +
                  " change records");
    ck.expect(rep.warnings.empty(), "unexpected warnings from layout fixture");
}

// 10. 500 synthetic changes run the full matrix + grouping + antiunification
// at tau=0.9, and the combined boolean CSV is symmetric with a true diagonal.
void scale_smoke(Check& ck) {
    std::mt19937 rng(1010);
    std::uniform_int_distribution<int> size_d(20, 40);
    std::vector<ATerm> bases;
    for (int i = 0; i < 50; ++i) bases.push_back(testsup::random_tree(rng, size_d(rng)));

    std::vector<Change> changes;
    for (int i = 0; i < 500; ++i) {
        // First 300 reuse cluster bases verbatim so tau=0.9 forms real groups.
        ATerm ctx = (i < 300) ? bases[static_cast<std::size_t>(i) % 50]
                              : testsup::random_variant(rng, bases[static_cast<std::size_t>(i) % 50], 2);
        Change c;
        c.origin = ChangeOrigin{"synthetic.mini", "old", "new"};
        switch (i % 3) {
        case 0:
            c.kind = ChangeKind::Insertion;
            c.after = ATerm::integer(i);
            c.context_after = ctx;
            break;
        case 1:
            c.kind = ChangeKind::Deletion;
            c.before = ATerm::integer(i);
            c.context_before = ctx;
            break;
        default:
            c.kind = ChangeKind::Mutation;
            c.before = ATerm::integer(i);
            c.after = ATerm::integer(i + 1);
            c.context_before = ctx;
            c.context_after = ctx;
            break;
        }
        changes.push_back(std::move(c));
    }

    std::vector<BoolMatrix> parts;
    std::vector<std::string> all_ids;
    std::size_t group_total = 0;
    std::size_t substitutions = 0;
    for (ChangeKind kind :
         {ChangeKind::Insertion, ChangeKind::Deletion, ChangeKind::Mutation}) {
        std::vector<Change> of_kind;
        for (const Change& c : changes)
            if (c.kind == kind) of_kind.push_back(c);
        DistanceMatrix d = distance_matrix(of_kind, kind, SideRule::After);
        for (const ChangeGroup& grp : threshold_groups(d, 0.9)) {
            ++group_total;
            std::vector<ATerm> trees;
            for (const std::string& id : grp.members)
                trees.push_back(rep_tree(of_kind[index_of(d.items, id)], SideRule::After));
            GroupAntiunification res = antiunify_n(trees);
            substitutions += res.members.size();
        }
        parts.push_back(boolean_matrix(d, 0.9));
        all_ids.insert(all_ids.end(), d.items.begin(), d.items.end());
    }
    ck.expect(substitutions == 500, "every change must land in exactly one group");
    ck.expect(group_total >= 3 && group_total < 500,
              "grouping degenerate: " + std::to_string(group_total) + " groups");

    std::string csv = to_csv(combine_boolean(parts, all_ids));
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(csv);
    for (std::string line; std::getline(lines, line);) {
        std::vector<std::string> cells;
        std::istringstream cols(line);
        for (std::string cell; std::getline(cols, cell, ',');) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    ck.expect(rows.size() == 501, "csv should hold a header plus 500 rows");
    if (rows.size() == 501) {
        bool shape_ok = true;
        for (const auto& r : rows) shape_ok = shape_ok && r.size() == 500;
        ck.expect(shape_ok, "csv rows are not all 500 columns wide");
        if (shape_ok) {
            bool symmetric = true, diagonal = true;
            for (std::size_t i = 0; i < 500; ++i) {
                diagonal = diagonal && rows[i + 1][i] == "1";
                for (std::size_t j = i + 1; j < 500; ++j)
                    symmetric = symmetric && rows[i + 1][j] == rows[j + 1][i];
            }
            ck.expect(symmetric, "boolean csv is not symmetric");
            ck.expect(diagonal, "boolean csv diagonal is not all true");
        }
    }
}

struct Criterion {
    std::string name;
    double limit_sec; // 0 = no stated budget
    std::function<void(Check&)> fn;
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: %s DATA_DIR CLI_PATH\n", argv[0]);
        return 2;
    }
    g_data_dir = argv[1];
    g_cli_path = argv[2];

    const std::vector<Criterion> criteria = {
        {"similarity metric laws (1000 random pairs)", 30, metric_laws},
        {"tree diff vs exhaustive oracle (5041 pairs)", 120, diff_oracle},
        {"weave projection round-trips (1000 pairs)", 0, weave_projections},
        {"antiunification reconstructs members (1000 groups)", 0, reconstruction},
        {"threshold endpoints tau=0 and tau=1", 0, threshold_endpoints},
        {"group counts nondecreasing across tau sweep", 0, monotone_sweep},
        {"for-loop template progression at 0.15/0.25/0.35", 60, forloop_progression},
        {"cross-file deletion group splits as tau rises", 0, crossfile_split},
        {"whitespace and brace-only commits yield no changes", 0, layout_neutrality},
        {"scale smoke: 500 changes end to end at tau=0.9", 300, scale_smoke},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        Check ck;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(ck);
        } catch (const std::exception& e) {
            ck.expect(false, std::string("unhandled exception: ") + e.what());
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_sec > 0 && sec > c.limit_sec)
            ck.expect(false, "time budget exceeded: " + std::to_string(sec) + "s > " +
                                 std::to_string(c.limit_sec) + "s");
        bool ok = ck.failures == 0;
        std::printf("[%s] %2zu. %s (%.2fs)%s\n", ok ? "PASS" : "FAIL", i + 1,
                    c.name.c_str(), sec, ok ? "" : ck.notes.c_str());
        if (!ok) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                criteria.size());
    return failed;
}
