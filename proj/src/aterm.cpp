#include "cpat/aterm.hpp"

#include <cassert>
#include <charconv>
#include <sstream>

namespace cpat {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

std::uint64_t hash_bytes(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

ATerm ATerm::appl(std::string label, std::vector<ATerm> children) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Appl;
    node->label = std::move(label);
    node->children = std::move(children);
    std::uint64_t h = mix(0x41, hash_bytes(node->label));
    for (const ATerm& c : node->children) {
        node->size += c.size();
        h = mix(h, c.hash());
    }
    node->hash = h;
    return ATerm(std::move(node));
}

ATerm ATerm::list(std::vector<ATerm> children) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::List;
    node->children = std::move(children);
    std::uint64_t h = 0x4c;
    for (const ATerm& c : node->children) {
        node->size += c.size();
        h = mix(h, c.hash());
    }
    node->hash = h;
    return ATerm(std::move(node));
}

ATerm ATerm::integer(long long value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Int;
    node->value = value;
    node->hash = mix(0x49, static_cast<std::uint64_t>(value));
    return ATerm(std::move(node));
}

const std::string& ATerm::label() const {
    assert(is_appl());
    return node_->label;
}

long long ATerm::value() const {
    assert(is_int());
    return node_->value;
}

bool ATerm::same_head(const ATerm& other) const {
    if (node_->kind != other.node_->kind) return false;
    switch (node_->kind) {
        case Kind::Appl: return node_->label == other.node_->label;
        case Kind::List: return true;
        case Kind::Int: return node_->value == other.node_->value;
    }
    return false;
}

bool ATerm::operator==(const ATerm& other) const { return equal(*this, other); }

bool equal(const ATerm& a, const ATerm& b) {
    if (a.id() == b.id()) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    if (!a.same_head(b)) return false;
    auto ca = a.children();
    auto cb = b.children();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (!equal(ca[i], cb[i])) return false;
    return true;
}

std::size_t size(const ATerm& t) { return t.size(); }

ATermParseError::ATermParseError(std::size_t off, const std::string& exp)
    : std::runtime_error("aterm parse error at byte " + std::to_string(off) +
                         ": expected " + exp),
      offset(off),
      expected(exp) {}

namespace {

class AtermParser {
public:
    explicit AtermParser(std::string_view text) : text_(text) {}

    ATerm parse_whole() {
        skip_ws();
        ATerm t = parse_term();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        throw ATermParseError(pos_, expected);
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') ++pos_;
            else break;
        }
    }

    bool try_keyword(std::string_view kw) {
        if (text_.substr(pos_, kw.size()) == kw) {
            pos_ += kw.size();
            return true;
        }
        return false;
    }

    void require_ws() {
        if (pos_ >= text_.size() || !(text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                      text_[pos_] == '\n' || text_[pos_] == '\r'))
            fail("whitespace");
        skip_ws();
    }

    ATerm parse_term() {
        if (try_keyword("AAppl")) {
            require_ws();
            std::string label = parse_label();
            skip_ws();
            return ATerm::appl(std::move(label), parse_children());
        }
        if (try_keyword("AList")) {
            skip_ws();
            return ATerm::list(parse_children());
        }
        if (try_keyword("AInt")) {
            require_ws();
            return ATerm::integer(parse_int());
        }
        fail("'AAppl', 'AList', or 'AInt'");
    }

    std::string parse_label() {
        if (pos_ >= text_.size() || text_[pos_] != '"') fail("'\"' to begin label");
        ++pos_;
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail("closing '\"' in label");
            char c = text_[pos_];
            if (c == '"') {
                ++pos_;
                return out;
            }
            if (c == '\\') {
                ++pos_;
                if (pos_ >= text_.size()) fail("escape character after '\\'");
                char e = text_[pos_];
                if (e != '"' && e != '\\') fail("'\"' or '\\' after '\\'");
                out.push_back(e);
                ++pos_;
            } else {
                out.push_back(c);
                ++pos_;
            }
        }
    }

    std::vector<ATerm> parse_children() {
        if (pos_ >= text_.size() || text_[pos_] != '[') fail("'['");
        ++pos_;
        skip_ws();
        std::vector<ATerm> out;
        if (pos_ < text_.size() && text_[pos_] == ']') {
            ++pos_;
            return out;
        }
        while (true) {
            out.push_back(parse_term());
            skip_ws();
            if (pos_ >= text_.size()) fail("',' or ']'");
            if (text_[pos_] == ']') {
                ++pos_;
                return out;
            }
            if (text_[pos_] != ',') fail("',' or ']'");
            ++pos_;
            skip_ws();
        }
    }

    long long parse_int() {
        std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        std::size_t digits_begin = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (pos_ == digits_begin) {
            pos_ = digits_begin;
            fail("decimal digits");
        }
        long long value = 0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc()) {
            pos_ = start;
            fail("integer within 64-bit range");
        }
        return value;
    }
};

void render_label(const std::string& label, std::string& out) {
    out.push_back('"');
    for (char c : label) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
}

void render_rec(const ATerm& t, std::string& out) {
    switch (t.kind()) {
        case ATerm::Kind::Appl:
            out += "AAppl ";
            render_label(t.label(), out);
            out.push_back(' ');
            break;
        case ATerm::Kind::List:
            out += "AList ";
            break;
        case ATerm::Kind::Int:
            out += "AInt ";
            out += std::to_string(t.value());
            return;
    }
    out.push_back('[');
    bool first = true;
    for (const ATerm& c : t.children()) {
        if (!first) out += ", ";
        first = false;
        render_rec(c, out);
    }
    out.push_back(']');
}

} // namespace

ATerm parse_aterm(std::string_view text) { return AtermParser(text).parse_whole(); }

std::string render_aterm(const ATerm& t) {
    std::string out;
    render_rec(t, out);
    return out;
}

} // namespace cpat
