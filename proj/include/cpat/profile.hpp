#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cpat {

// Per-language knobs for the pipeline: which files to pick up and which node
// labels count as statement roots when extracting change context.
struct LanguageProfile {
    std::string name;
    std::set<std::string> file_extensions; // each begins with '.'
    std::set<std::string> statement_labels;

    bool matches_extension(std::string_view path) const;
    bool is_statement_label(const std::string& label) const {
        return statement_labels.count(label) != 0;
    }
};

struct ProfileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Built-in profile for the MiniLang frontend (.mini sources plus .aterm files).
LanguageProfile default_minilang_profile();

// Parses the `key = value` profile format:
//
//   name = minilang
//   extensions = .mini, .aterm
//   statement_labels = ExpStmt, IfStmt, ForStmt
//
// Blank lines and lines starting with '#' are ignored. statement_labels must
// be non-empty and every extension must begin with a dot.
LanguageProfile parse_profile(std::string_view text);

// Loads a profile file; "minilang" resolves to the built-in profile.
LanguageProfile resolve_profile(const std::string& name_or_path);

} // namespace cpat
