#include <fstream>
#include <sstream>

#include "cpat/frontend.hpp"

namespace cpat {

ATerm ingest_aterm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open aterm file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_aterm(buf.str());
    } catch (const ATermParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

ATerm parse_version(const std::string& path, std::string_view text,
                    const LanguageProfile& profile) {
    if (std::string_view(path).ends_with(".aterm")) return parse_aterm(text);
    return parse_source(text, profile);
}

} // namespace cpat
