#include "cpat/vcs.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <optional>
#include <utility>

#include "cpat/frontend.hpp"
#include "cpat/tree_diff.hpp"

namespace cpat {

ProcessRunner::Result SystemProcessRunner::run(const std::vector<std::string>& argv) {
    int fds[2];
    if (pipe(fds) != 0)
        throw RepoError(std::string("pipe() failed: ") + std::strerror(errno));
    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw RepoError(std::string("fork() failed: ") + std::strerror(errno));
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        close(fds[0]);
        close(fds[1]);
        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        _exit(127);
    }
    close(fds[1]);
    Result result;
    char buf[1 << 16];
    while (true) {
        ssize_t n = read(fds[0], buf, sizeof buf);
        if (n > 0) {
            result.output.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0) {
            break;
        } else if (errno != EINTR) {
            close(fds[0]);
            throw RepoError(std::string("read() from child failed: ") + std::strerror(errno));
        }
    }
    close(fds[0]);
    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    return result;
}

namespace {

void emit(const WarnFn& warn, const std::string& message) {
    if (warn) warn(message);
}

std::string run_checked(ProcessRunner& runner, const std::vector<std::string>& argv,
                        const std::string& what) {
    ProcessRunner::Result r = runner.run(argv);
    if (r.exit_code != 0)
        throw RepoError(what + " failed (exit " + std::to_string(r.exit_code) + ")");
    return std::move(r.output);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        if (nl > start) out.emplace_back(text, start, nl - start);
        start = nl + 1;
    }
    return out;
}

// "STATUS\0PATH\0" records from diff-tree --name-status -z.
std::vector<std::pair<std::string, std::string>> parse_name_status(const std::string& raw) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start < raw.size()) {
        std::size_t nul = raw.find('\0', start);
        if (nul == std::string::npos) nul = raw.size();
        fields.emplace_back(raw, start, nul - start);
        start = nul + 1;
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i + 1 < fields.size(); i += 2)
        out.emplace_back(std::move(fields[i]), std::move(fields[i + 1]));
    return out;
}

bool looks_binary(const std::string& text) {
    return text.find('\0') != std::string::npos;
}

struct Step {
    std::string old_commit; // empty: diff against the empty tree
    std::string new_commit;
};

} // namespace

std::vector<VersionPair> walk_history(const std::string& repo_path,
                                      const std::string& rev_range,
                                      const LanguageProfile& profile, ProcessRunner& runner,
                                      const WalkOptions& opts, const WarnFn& warn) {
    std::vector<std::string> commits = split_lines(
        run_checked(runner,
                    {"git", "-C", repo_path, "rev-list", "--first-parent", "--reverse",
                     rev_range},
                    "git rev-list '" + rev_range + "'"));

    std::vector<Step> steps;
    if (!commits.empty() && opts.include_initial) {
        std::vector<std::string> lineage = split_lines(
            run_checked(runner,
                        {"git", "-C", repo_path, "rev-list", "--first-parent", "-n", "2",
                         commits[0]},
                        "git rev-list -n 2"));
        steps.push_back({lineage.size() >= 2 ? lineage[1] : std::string(), commits[0]});
    }
    for (std::size_t i = 1; i < commits.size(); ++i)
        steps.push_back({commits[i - 1], commits[i]});

    auto read_blob = [&](const std::string& commit, const std::string& path) {
        return run_checked(runner,
                           {"git", "-C", repo_path, "cat-file", "blob", commit + ":" + path},
                           "git cat-file " + commit + ":" + path);
    };

    std::vector<VersionPair> out;
    for (const Step& step : steps) {
        std::vector<std::string> argv = {"git",          "-C",           repo_path,
                                         "diff-tree",    "-r",           "--no-commit-id",
                                         "--no-renames", "--name-status", "-z"};
        if (step.old_commit.empty()) {
            argv.push_back("--root");
        } else {
            argv.push_back(step.old_commit);
        }
        argv.push_back(step.new_commit);
        std::string raw = run_checked(runner, argv, "git diff-tree at " + step.new_commit);

        for (auto& [status, path] : parse_name_status(raw)) {
            if (!profile.matches_extension(path)) continue;
            if (status == "D") {
                emit(warn, "skipping " + path + ": deleted at " + step.new_commit);
                continue;
            }
            bool added = status == "A" || step.old_commit.empty();
            std::string new_text = read_blob(step.new_commit, path);
            std::string old_text = added ? std::string() : read_blob(step.old_commit, path);
            if (looks_binary(new_text) || looks_binary(old_text)) {
                emit(warn, "skipping " + path + " at " + step.new_commit + ": binary content");
                continue;
            }
            if (new_text.size() > opts.max_file_bytes ||
                old_text.size() > opts.max_file_bytes) {
                emit(warn, "skipping " + path + " at " + step.new_commit +
                               ": exceeds max file size");
                continue;
            }
            if (old_text == new_text) continue;
            out.push_back(VersionPair{path, step.old_commit, step.new_commit,
                                      std::move(old_text), std::move(new_text)});
        }
    }
    return out;
}

std::vector<Change> pair_to_changes(const VersionPair& p, const LanguageProfile& profile,
                                    const WarnFn& warn) {
    auto parse_one = [&](const std::string& commit,
                         const std::string& text) -> std::optional<ATerm> {
        try {
            return parse_version(p.file_path, text, profile);
        } catch (const std::exception& e) {
            emit(warn, "skipping " + p.file_path + " at " +
                           (commit.empty() ? "(none)" : commit) + ": " + e.what());
            return std::nullopt;
        }
    };
    std::optional<ATerm> old_tree = parse_one(p.old_commit, p.old_text);
    if (!old_tree) return {};
    std::optional<ATerm> new_tree = parse_one(p.new_commit, p.new_text);
    if (!new_tree) return {};

    auto [left_edit, right_edit] = edit_trees(*old_tree, *new_tree);
    WovenTree w = weave(left_edit, right_edit);
    return extract_changes(w, profile, ChangeOrigin{p.file_path, p.old_commit, p.new_commit});
}

} // namespace cpat
