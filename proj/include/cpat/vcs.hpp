#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpat/profile.hpp"
#include "cpat/weave.hpp"

namespace cpat {

struct RepoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs a command and captures its stdout (stderr stays on the caller's).
// Swappable so history walking can be tested against a scripted fake.
class ProcessRunner {
public:
    struct Result {
        int exit_code = 0;
        std::string output;
    };

    virtual ~ProcessRunner() = default;
    virtual Result run(const std::vector<std::string>& argv) = 0;
};

class SystemProcessRunner : public ProcessRunner {
public:
    Result run(const std::vector<std::string>& argv) override;
};

// Adjacent versions of one file along the walked history.
struct VersionPair {
    std::string file_path;
    std::string old_commit; // empty when the file first appears
    std::string new_commit;
    std::string old_text; // empty for additions
    std::string new_text;
};

struct WalkOptions {
    // Also diff the first listed commit against its parent, or against
    // nothing when it has none (files then appear as additions).
    bool include_initial = false;
    // Files larger than this on either side are skipped with a warning.
    std::size_t max_file_bytes = std::size_t{1} << 20;
};

using WarnFn = std::function<void(const std::string&)>;

// Replays `rev_range` (first-parent linearized, oldest first) over the
// repository, yielding one VersionPair per changed file per commit step for
// files the profile's extensions claim. Additions pair empty old text with
// the new content; deletions, binary files, oversized files, and
// content-identical pairs are dropped (the first three with a warning).
std::vector<VersionPair> walk_history(const std::string& repo_path,
                                      const std::string& rev_range,
                                      const LanguageProfile& profile, ProcessRunner& runner,
                                      const WalkOptions& opts, const WarnFn& warn);

// Parses both versions and extracts the change forest. A version that fails
// to parse degrades to a warning and an empty result.
std::vector<Change> pair_to_changes(const VersionPair& p, const LanguageProfile& profile,
                                    const WarnFn& warn);

} // namespace cpat
