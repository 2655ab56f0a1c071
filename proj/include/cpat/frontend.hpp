#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cpat/aterm.hpp"
#include "cpat/profile.hpp"

namespace cpat {

struct SyntaxError : std::runtime_error {
    SyntaxError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line;   // 1-based
    std::size_t column; // 1-based
};

// Parses MiniLang source into an ATerm rooted at "CompilationUnit". The
// output is layout-neutral: whitespace between tokens and braces around
// single-statement if/for/while bodies never change the tree. The profile
// argument selects the frontend; the built-in MiniLang grammar is the only
// one, so only its name is consulted today.
ATerm parse_source(std::string_view text, const LanguageProfile& profile);

// Reads a file containing one aterm in the canonical text format.
ATerm ingest_aterm_file(const std::string& path);

// Parses one file version, dispatching on the path's extension: `.aterm`
// content goes through parse_aterm, anything else through parse_source.
ATerm parse_version(const std::string& path, std::string_view text,
                    const LanguageProfile& profile);

} // namespace cpat
