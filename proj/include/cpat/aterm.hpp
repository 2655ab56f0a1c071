#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpat {

// Annotated term: an unshared, immutable tree with three node variants.
//
//   Appl  — labeled application node with ordered children
//   List  — unlabeled sequence node
//   Int   — integer leaf
//
// Labels that encode source string literals keep their double quotes inside
// the label itself (identifier `i` is stored under the label `"i"`).
//
// Text format (canonical form uses exactly one space between tokens):
//
//   aterm      := "AAppl" SP quoted-label SP child-list
//               | "AList" SP child-list
//               | "AInt"  SP integer
//   child-list := "[" (aterm ("," SP aterm)*)? "]"
//
// Values are handles to immutable nodes; copying is cheap and thread-safe.
class ATerm {
public:
    enum class Kind { Appl, List, Int };

    static ATerm appl(std::string label, std::vector<ATerm> children = {});
    static ATerm list(std::vector<ATerm> children = {});
    static ATerm integer(long long value);

    Kind kind() const { return node_->kind; }
    bool is_appl() const { return node_->kind == Kind::Appl; }
    bool is_list() const { return node_->kind == Kind::List; }
    bool is_int() const { return node_->kind == Kind::Int; }

    // Appl only.
    const std::string& label() const;
    // Int only.
    long long value() const;

    std::span<const ATerm> children() const { return node_->children; }

    // Total node count, cached at construction.
    std::size_t size() const { return node_->size; }
    // Structural hash, cached at construction.
    std::uint64_t hash() const { return node_->hash; }

    // Same variant and, for Appl/Int, same label/value. Ignores children.
    bool same_head(const ATerm& other) const;

    // Stable identity of the underlying node, usable as a memo key.
    const void* id() const { return node_.get(); }

    bool operator==(const ATerm& other) const;
    bool operator!=(const ATerm& other) const { return !(*this == other); }

private:
    struct Node {
        Kind kind;
        long long value = 0;
        std::string label;
        std::vector<ATerm> children;
        std::size_t size = 1;
        std::uint64_t hash = 0;
    };

    explicit ATerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

// Structural equality.
bool equal(const ATerm& a, const ATerm& b);

// Node count (1 for a leaf).
std::size_t size(const ATerm& t);

struct ATermParseError : std::runtime_error {
    ATermParseError(std::size_t offset, const std::string& expected);
    std::size_t offset;   // byte offset into the input
    std::string expected; // description of the expected token
};

// Parses one aterm. Leading/trailing whitespace is allowed; anything else
// after the term is an error.
ATerm parse_aterm(std::string_view text);

// Canonical serialization; parse_aterm(render_aterm(t)) == t.
std::string render_aterm(const ATerm& t);

} // namespace cpat
