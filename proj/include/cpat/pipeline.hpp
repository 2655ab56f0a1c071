#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpat/antiunify.hpp"
#include "cpat/similarity.hpp"
#include "cpat/vcs.hpp"

namespace cpat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.01;
};

struct RunConfig {
    std::string repo_path;
    std::string rev_range = "HEAD";
    std::string profile = "minilang"; // built-in name or a profile file path
    double tau = 0.9;
    std::optional<SweepSpec> tau_sweep;
    SideRule side_rule = SideRule::After;
    std::string output_dir = ".";
    bool write_json = true;
    bool write_csv = true;
    bool write_text = true;
    bool include_initial = false;
    std::size_t max_file_bytes = std::size_t{1} << 20;
};

struct GroupReport {
    std::string id; // "g001", ordinal after sorting
    ChangeKind kind;
    double tau;
    std::vector<std::size_t> member_indices;  // into RunReport::changes
    std::vector<Substitution> substitutions;  // parallel to member_indices
    Template tpl;                             // over the side-rule trees
    std::optional<Template> other_side_tpl;   // mutations: the opposite side
};

struct RunReport {
    RunConfig config;
    std::vector<Change> changes;
    std::vector<std::string> change_ids;    // parallel to changes
    std::vector<DistanceMatrix> matrices;   // one per kind that has changes
    std::vector<GroupReport> groups;        // size desc, then template text
    std::vector<SweepRow> sweep;            // filled when a sweep was asked for
    std::vector<std::string> warnings;
};

// ingest -> parse -> diff -> weave -> extract -> matrices -> groups ->
// antiunify. Throws ConfigError for bad configuration, ProfileError for a bad
// profile, RepoError when the repository cannot be read. Parse problems in
// individual file versions become warnings.
RunReport run_pipeline(const RunConfig& cfg, ProcessRunner& runner);

// The groups.json payload.
std::string groups_json_text(const RunReport& report);

// The patterns.txt payload: one entry per group, largest first.
std::string patterns_text(const RunReport& report);

// Writes the outputs selected by report.config into its output_dir:
// groups.json, matrix_<kind>.csv, matrix_<kind>_bool.csv, matrix_all_bool.csv,
// sweep.csv, patterns.txt. Returns the paths written.
std::vector<std::string> write_reports(const RunReport& report);

// Human-readable description of one group: template (with numbered holes),
// members, and each member's bindings. Throws ConfigError for an unknown id,
// listing the valid ones.
std::string explain_group(const RunReport& report, const std::string& group_id);

} // namespace cpat
