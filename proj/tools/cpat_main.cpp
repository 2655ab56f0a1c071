#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cpat/aterm.hpp"
#include "cpat/pipeline.hpp"
#include "cpat/profile.hpp"

namespace {

struct CliOptions {
    cpat::RunConfig cfg;
    std::string sweep_arg;
    std::string side_arg = "after";
    std::vector<std::string> formats;
    std::string group_id; // explain only
};

void add_common_flags(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--repo", o.cfg.repo_path, "Path to the git repository")
        ->required();
    cmd->add_option("--range", o.cfg.rev_range,
                    "Revision range handed to git rev-list (default HEAD)");
    cmd->add_option("--profile", o.cfg.profile,
                    "Language profile: built-in name or a profile file");
    cmd->add_option("--tau", o.cfg.tau, "Similarity threshold in [0,1]");
    cmd->add_option("--side-rule", o.side_arg,
                    "Which side of a mutation to group on: before|after");
    cmd->add_flag("--include-initial", o.cfg.include_initial,
                  "Also diff the first listed commit against its parent "
                  "(or an empty tree)");
    cmd->add_option("--max-file-bytes", o.cfg.max_file_bytes,
                    "Skip file versions larger than this (default 1 MiB)");
}

void apply_side_rule(CliOptions& o) {
    if (o.side_arg == "before")
        o.cfg.side_rule = cpat::SideRule::Before;
    else if (o.side_arg == "after")
        o.cfg.side_rule = cpat::SideRule::After;
    else
        throw cpat::ConfigError("side rule must be 'before' or 'after', got '" +
                                o.side_arg + "'");
}

void apply_sweep(CliOptions& o) {
    if (o.sweep_arg.empty()) return;
    cpat::SweepSpec s;
    char trailing;
    if (std::sscanf(o.sweep_arg.c_str(), "%lf:%lf:%lf%c", &s.start, &s.stop,
                    &s.step, &trailing) != 3)
        throw cpat::ConfigError("sweep must look like START:STOP:STEP, got '" +
                                o.sweep_arg + "'");
    o.cfg.tau_sweep = s;
}

void apply_formats(CliOptions& o) {
    if (o.formats.empty()) return;
    o.cfg.write_json = o.cfg.write_csv = o.cfg.write_text = false;
    for (const std::string& f : o.formats) {
        if (f == "json")
            o.cfg.write_json = true;
        else if (f == "csv")
            o.cfg.write_csv = true;
        else if (f == "text")
            o.cfg.write_text = true;
        else
            throw cpat::ConfigError("unknown format '" + f +
                                    "' (expected json, csv, or text)");
    }
}

int run_command(CliOptions& o) {
    apply_side_rule(o);
    apply_sweep(o);
    apply_formats(o);
    cpat::SystemProcessRunner runner;
    cpat::RunReport report = cpat::run_pipeline(o.cfg, runner);
    for (const std::string& w : report.warnings)
        std::cerr << "warning: " << w << "\n";
    std::vector<std::string> written = cpat::write_reports(report);
    std::cout << report.changes.size() << " change(s), " << report.groups.size()
              << " group(s) at tau=" << o.cfg.tau << "\n";
    for (const std::string& p : written)
        std::cout << "wrote " << p << "\n";
    return 0;
}

int explain_command(CliOptions& o) {
    apply_side_rule(o);
    cpat::SystemProcessRunner runner;
    o.cfg.write_json = o.cfg.write_csv = o.cfg.write_text = false;
    cpat::RunReport report = cpat::run_pipeline(o.cfg, runner);
    for (const std::string& w : report.warnings)
        std::cerr << "warning: " << w << "\n";
    std::cout << cpat::explain_group(report, o.group_id);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mines a git history for recurring structural change patterns"};
    app.require_subcommand(1);

    CliOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "Extract, group, and report changes");
    add_common_flags(run, run_opts);
    run->add_option("--tau-sweep", run_opts.sweep_arg,
                    "Also report group counts over START:STOP:STEP thresholds");
    run->add_option("--out", run_opts.cfg.output_dir,
                    "Directory for the report files (default .)");
    run->add_option("--format", run_opts.formats,
                    "Outputs to produce: json, csv, text (default all)")
        ->delimiter(',');

    CliOptions explain_opts;
    CLI::App* explain =
        app.add_subcommand("explain", "Show one group's template and bindings");
    add_common_flags(explain, explain_opts);
    explain->add_option("group", explain_opts.group_id, "Group id, e.g. g001")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_command(run_opts);
        return explain_command(explain_opts);
    } catch (const cpat::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cpat::ProfileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cpat::ATermParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cpat::RepoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
