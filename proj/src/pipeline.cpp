#include "cpat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "cpat/profile.hpp"

namespace cpat {

namespace {

using ordered_json = nlohmann::ordered_json;

void validate(const RunConfig& cfg) {
    if (cfg.repo_path.empty())
        throw ConfigError("no repository path given");
    if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0))
        throw ConfigError("tau must be within [0, 1]");
    if (cfg.tau_sweep) {
        const SweepSpec& s = *cfg.tau_sweep;
        if (!(s.start >= 0.0 && s.start <= 1.0) || !(s.stop >= 0.0 && s.stop <= 1.0))
            throw ConfigError("sweep bounds must be within [0, 1]");
        if (s.stop < s.start)
            throw ConfigError("sweep stop must not be below start");
        if (!(s.step > 0.0))
            throw ConfigError("sweep step must be positive");
    }
    if (cfg.max_file_bytes == 0)
        throw ConfigError("max file size must be positive");
}

std::vector<double> sweep_taus(const SweepSpec& s) {
    std::vector<double> taus;
    long long n = std::llround((s.stop - s.start) / s.step);
    for (long long k = 0; k <= n; ++k) {
        double t = s.start + static_cast<double>(k) * s.step;
        if (t > s.stop + 1e-9) break;
        taus.push_back(t);
    }
    if (taus.empty()) taus.push_back(s.start);
    return taus;
}

std::string format_tau(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    return buf;
}

const ATerm& other_side_tree(const Change& c, SideRule rule) {
    return rep_tree(c, rule == SideRule::After ? SideRule::Before : SideRule::After);
}

ordered_json term_or_null(const std::optional<ATerm>& t) {
    if (!t) return nullptr;
    return render_aterm(*t);
}

ordered_json substitution_json(const Substitution& sub) {
    ordered_json j = ordered_json::object();
    for (const auto& [index, term] : sub)
        j[std::to_string(index)] = render_aterm(term);
    return j;
}

} // namespace

RunReport run_pipeline(const RunConfig& cfg, ProcessRunner& runner) {
    validate(cfg);

    RunReport report;
    report.config = cfg;

    LanguageProfile profile = resolve_profile(cfg.profile);
    WalkOptions opts;
    opts.include_initial = cfg.include_initial;
    opts.max_file_bytes = cfg.max_file_bytes;
    auto warn = [&report](const std::string& msg) { report.warnings.push_back(msg); };

    std::vector<VersionPair> pairs =
        walk_history(cfg.repo_path, cfg.rev_range, profile, runner, opts, warn);
    for (const VersionPair& p : pairs) {
        std::vector<Change> cs = pair_to_changes(p, profile, warn);
        report.changes.insert(report.changes.end(), cs.begin(), cs.end());
    }

    report.change_ids.reserve(report.changes.size());
    for (std::size_t i = 0; i < report.changes.size(); ++i)
        report.change_ids.push_back(change_id(report.changes[i].kind, i));

    const ChangeKind kinds[] = {ChangeKind::Insertion, ChangeKind::Deletion,
                                ChangeKind::Mutation};
    for (ChangeKind kind : kinds) {
        std::vector<std::string> ids;
        std::map<std::string, std::size_t> to_global;
        for (std::size_t i = 0; i < report.changes.size(); ++i) {
            if (report.changes[i].kind != kind) continue;
            ids.push_back(report.change_ids[i]);
            to_global[report.change_ids[i]] = i;
        }
        if (ids.empty()) continue;

        DistanceMatrix dm =
            distance_matrix(report.changes, kind, cfg.side_rule, ids);
        for (const ChangeGroup& g : threshold_groups(dm, cfg.tau)) {
            GroupReport gr{
                "",        kind, cfg.tau, {}, {},
                Template::metavar(1), std::nullopt};
            std::vector<ATerm> members;
            for (const std::string& member_id : g.members) {
                std::size_t idx = to_global.at(member_id);
                gr.member_indices.push_back(idx);
                members.push_back(rep_tree(report.changes[idx], cfg.side_rule));
            }
            GroupAntiunification au = antiunify_n(members);
            gr.tpl = au.tpl;
            gr.substitutions = std::move(au.members);
            if (kind == ChangeKind::Mutation) {
                std::vector<ATerm> other;
                for (std::size_t idx : gr.member_indices)
                    other.push_back(
                        other_side_tree(report.changes[idx], cfg.side_rule));
                gr.other_side_tpl = antiunify_n(other).tpl;
            }
            report.groups.push_back(std::move(gr));
        }
        report.matrices.push_back(std::move(dm));
    }

    std::stable_sort(report.groups.begin(), report.groups.end(),
                     [&report](const GroupReport& a, const GroupReport& b) {
                         if (a.member_indices.size() != b.member_indices.size())
                             return a.member_indices.size() > b.member_indices.size();
                         std::string ta = render_template(a.tpl, RenderMode::MiniLang);
                         std::string tb = render_template(b.tpl, RenderMode::MiniLang);
                         if (ta != tb) return ta < tb;
                         return report.change_ids[a.member_indices.front()] <
                                report.change_ids[b.member_indices.front()];
                     });
    for (std::size_t i = 0; i < report.groups.size(); ++i) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "g%03zu", i + 1);
        report.groups[i].id = buf;
    }

    if (cfg.tau_sweep)
        report.sweep = sweep_group_counts(report.changes, sweep_taus(*cfg.tau_sweep),
                                          cfg.side_rule);

    return report;
}

std::string groups_json_text(const RunReport& report) {
    const RunConfig& cfg = report.config;
    ordered_json root;

    root["config"] = {
        {"repo", cfg.repo_path},
        {"range", cfg.rev_range},
        {"profile", cfg.profile},
        {"tau", cfg.tau},
        {"side_rule", side_rule_name(cfg.side_rule)},
        {"include_initial", cfg.include_initial},
        {"max_file_bytes", cfg.max_file_bytes},
    };

    std::size_t counts[3] = {0, 0, 0};
    for (const Change& c : report.changes)
        ++counts[static_cast<int>(c.kind)];
    root["summary"] = {
        {"changes", report.changes.size()},
        {"insertions", counts[static_cast<int>(ChangeKind::Insertion)]},
        {"deletions", counts[static_cast<int>(ChangeKind::Deletion)]},
        {"mutations", counts[static_cast<int>(ChangeKind::Mutation)]},
        {"groups", report.groups.size()},
        {"warnings", report.warnings.size()},
    };

    ordered_json changes = ordered_json::array();
    for (std::size_t i = 0; i < report.changes.size(); ++i) {
        const Change& c = report.changes[i];
        changes.push_back({
            {"id", report.change_ids[i]},
            {"kind", change_kind_name(c.kind)},
            {"file", c.origin.path},
            {"old_commit", c.origin.old_commit},
            {"new_commit", c.origin.new_commit},
            {"before", term_or_null(c.before)},
            {"after", term_or_null(c.after)},
            {"context_before", term_or_null(c.context_before)},
            {"context_after", term_or_null(c.context_after)},
        });
    }
    root["changes"] = std::move(changes);

    ordered_json groups = ordered_json::array();
    for (const GroupReport& g : report.groups) {
        ordered_json jg;
        jg["id"] = g.id;
        jg["kind"] = change_kind_name(g.kind);
        jg["tau"] = g.tau;
        jg["size"] = g.member_indices.size();
        jg["template"] = render_template(g.tpl, RenderMode::MiniLang);
        jg["template_aterm"] = render_template(g.tpl, RenderMode::Aterm);
        if (g.other_side_tpl) {
            jg["template_other_side"] =
                render_template(*g.other_side_tpl, RenderMode::MiniLang);
            jg["template_other_side_aterm"] =
                render_template(*g.other_side_tpl, RenderMode::Aterm);
        }
        ordered_json members = ordered_json::array();
        for (std::size_t k = 0; k < g.member_indices.size(); ++k) {
            std::size_t idx = g.member_indices[k];
            const Change& c = report.changes[idx];
            members.push_back({
                {"id", report.change_ids[idx]},
                {"file", c.origin.path},
                {"old_commit", c.origin.old_commit},
                {"new_commit", c.origin.new_commit},
                {"substitution", substitution_json(g.substitutions[k])},
            });
        }
        jg["members"] = std::move(members);
        groups.push_back(std::move(jg));
    }
    root["groups"] = std::move(groups);
    root["warnings"] = report.warnings;

    return root.dump(2) + "\n";
}

std::string patterns_text(const RunReport& report) {
    std::ostringstream out;
    out << report.groups.size() << " group(s) at tau=" << format_tau(report.config.tau)
        << ", side=" << side_rule_name(report.config.side_rule) << "\n";
    for (const GroupReport& g : report.groups) {
        out << "\n" << g.id << "  " << change_kind_name(g.kind) << "  "
            << g.member_indices.size() << " member(s)\n";
        out << "  " << render_template(g.tpl, RenderMode::MiniLang) << "\n";
        if (g.other_side_tpl)
            out << "  (other side: "
                << render_template(*g.other_side_tpl, RenderMode::MiniLang) << ")\n";
        out << "  members:";
        for (std::size_t idx : g.member_indices)
            out << " " << report.change_ids[idx];
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> write_reports(const RunReport& report) {
    namespace fs = std::filesystem;
    const RunConfig& cfg = report.config;
    fs::create_directories(cfg.output_dir);

    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& text) {
        fs::path p = fs::path(cfg.output_dir) / name;
        std::ofstream out(p, std::ios::binary);
        out << text;
        if (!out)
            throw std::runtime_error("cannot write " + p.string());
        written.push_back(p.string());
    };

    if (cfg.write_json)
        emit("groups.json", groups_json_text(report));

    if (cfg.write_csv) {
        std::vector<BoolMatrix> bools;
        for (const DistanceMatrix& dm : report.matrices) {
            std::string kind = change_kind_name(dm.kind);
            BoolMatrix bm = boolean_matrix(dm, cfg.tau);
            emit("matrix_" + kind + ".csv", to_csv(dm));
            emit("matrix_" + kind + "_bool.csv", to_csv(bm));
            bools.push_back(std::move(bm));
        }
        emit("matrix_all_bool.csv",
             to_csv(combine_boolean(bools, report.change_ids)));
        if (!report.sweep.empty())
            emit("sweep.csv", sweep_to_csv(report.sweep));
    }

    if (cfg.write_text)
        emit("patterns.txt", patterns_text(report));

    return written;
}

std::string explain_group(const RunReport& report, const std::string& group_id) {
    const GroupReport* found = nullptr;
    for (const GroupReport& g : report.groups)
        if (g.id == group_id) {
            found = &g;
            break;
        }
    if (!found) {
        std::string valid;
        for (const GroupReport& g : report.groups)
            valid += (valid.empty() ? "" : ", ") + g.id;
        if (valid.empty()) valid = "(none)";
        throw ConfigError("unknown group '" + group_id + "'; valid ids: " + valid);
    }

    std::ostringstream out;
    out << found->id << "  " << change_kind_name(found->kind) << "  "
        << found->member_indices.size() << " member(s)  tau="
        << format_tau(found->tau) << "\n";
    out << "template: " << render_template(found->tpl, RenderMode::MiniLangNumbered)
        << "\n";
    out << "aterm:    " << render_template(found->tpl, RenderMode::Aterm) << "\n";
    if (found->other_side_tpl)
        out << "other side: "
            << render_template(*found->other_side_tpl, RenderMode::MiniLangNumbered)
            << "\n";
    out << "members:\n";
    for (std::size_t k = 0; k < found->member_indices.size(); ++k) {
        std::size_t idx = found->member_indices[k];
        const Change& c = report.changes[idx];
        out << "  " << report.change_ids[idx] << "  " << c.origin.path << "  "
            << c.origin.old_commit.substr(0, 12) << ".."
            << c.origin.new_commit.substr(0, 12) << "\n";
        for (const auto& [var, term] : found->substitutions[k])
            out << "    #" << var << " = " << render_aterm(term) << "\n";
    }
    return out.str();
}

} // namespace cpat
