#include "cpat/profile.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace cpat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_list(std::string_view value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        std::string_view item =
            trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (!item.empty()) out.emplace_back(item);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

bool LanguageProfile::matches_extension(std::string_view path) const {
    std::size_t slash = path.find_last_of("/\\");
    std::string_view base = slash == std::string_view::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    if (dot == std::string_view::npos) return false;
    return file_extensions.count(std::string(base.substr(dot))) != 0;
}

LanguageProfile default_minilang_profile() {
    LanguageProfile p;
    p.name = "minilang";
    p.file_extensions = {".mini", ".aterm"};
    p.statement_labels = {"ExpStmt", "IfStmt",  "ForStmt",      "WhileStmt",
                          "Return",  "Block",   "LocalVarDecl", "MethodDecl"};
    return p;
}

LanguageProfile parse_profile(std::string_view text) {
    LanguageProfile p;
    bool saw_name = false, saw_ext = false, saw_labels = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            trim(text.substr(pos, eol == std::string_view::npos ? eol : eol - pos));
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (line.empty() || line.front() == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ProfileError("profile line " + std::to_string(line_no) +
                               ": expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key == "name") {
            p.name = std::string(value);
            saw_name = true;
        } else if (key == "extensions") {
            for (auto& e : split_list(value)) {
                if (e.front() != '.')
                    throw ProfileError("profile line " + std::to_string(line_no) +
                                       ": extension '" + e + "' must start with '.'");
                p.file_extensions.insert(std::move(e));
            }
            saw_ext = true;
        } else if (key == "statement_labels") {
            for (auto& l : split_list(value)) p.statement_labels.insert(std::move(l));
            saw_labels = true;
        } else {
            throw ProfileError("profile line " + std::to_string(line_no) +
                               ": unknown key '" + key + "'");
        }
    }
    if (!saw_name || p.name.empty()) throw ProfileError("profile is missing a name");
    if (!saw_ext || p.file_extensions.empty())
        throw ProfileError("profile is missing extensions");
    if (!saw_labels || p.statement_labels.empty())
        throw ProfileError("profile is missing statement_labels");
    return p;
}

LanguageProfile resolve_profile(const std::string& name_or_path) {
    if (name_or_path == "minilang") return default_minilang_profile();
    std::ifstream in(name_or_path, std::ios::binary);
    if (!in) throw ProfileError("cannot open profile file: " + name_or_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

} // namespace cpat
