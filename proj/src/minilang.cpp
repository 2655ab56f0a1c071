#include <cctype>
#include <vector>

#include "cpat/frontend.hpp"

namespace cpat {

SyntaxError::SyntaxError(std::size_t l, std::size_t c, const std::string& message)
    : std::runtime_error("syntax error at line " + std::to_string(l) + ", column " +
                         std::to_string(c) + ": " + message),
      line(l),
      column(c) {}

namespace {

struct Token {
    enum class Type { Ident, Int, Str, Punct, End };
    Type type;
    std::string text;
    long long ival = 0;
    std::size_t line = 1;
    std::size_t col = 1;
};

bool is_keyword(const std::string& s) {
    return s == "if" || s == "else" || s == "while" || s == "for" || s == "return";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_ws();
            Token t = next();
            bool end = t.type == Token::Type::End;
            out.push_back(std::move(t));
            if (end) return out;
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;

    [[noreturn]] void fail(const std::string& message) {
        throw SyntaxError(line_, col_, message);
    }

    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') advance(1);
            else break;
        }
    }

    Token next() {
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.type = Token::Type::End;
            return t;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_'))
                advance(1);
            t.type = Token::Type::Ident;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                advance(1);
            t.type = Token::Type::Int;
            t.text = std::string(text_.substr(start, pos_ - start));
            t.ival = std::stoll(t.text);
            return t;
        }
        if (c == '"') {
            std::size_t start = pos_;
            advance(1);
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\') {
                    if (pos_ + 1 >= text_.size()) fail("unterminated string literal");
                    advance(2);
                } else if (text_[pos_] == '\n') {
                    fail("unterminated string literal");
                } else {
                    advance(1);
                }
            }
            if (pos_ >= text_.size()) fail("unterminated string literal");
            advance(1);
            t.type = Token::Type::Str;
            t.text = std::string(text_.substr(start, pos_ - start));
            return t;
        }
        static const char* two_char[] = {"++", "--", "+=", "-=", "==", "!=", "<=", ">="};
        for (const char* op : two_char) {
            if (text_.substr(pos_, 2) == op) {
                t.type = Token::Type::Punct;
                t.text = op;
                advance(2);
                return t;
            }
        }
        static const std::string_view singles = "(){}[];,:.=<>+-*/%";
        if (singles.find(c) != std::string_view::npos) {
            t.type = Token::Type::Punct;
            t.text = std::string(1, c);
            advance(1);
            return t;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

ATerm ident_leaf(const std::string& name) {
    return ATerm::appl("\"" + name + "\"");
}

ATerm make_ident(const std::string& name) {
    return ATerm::appl("Ident", {ident_leaf(name)});
}

ATerm make_var(const std::string& name) {
    return ATerm::appl("ExpName", {ATerm::appl("Name", {make_ident(name)})});
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ATerm run() {
        std::vector<ATerm> items;
        while (!at_end()) items.push_back(top_item());
        return ATerm::appl("CompilationUnit", {ATerm::list(std::move(items))});
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    bool at_end() const { return peek().type == Token::Type::End; }

    [[noreturn]] void fail(const std::string& message) {
        const Token& t = peek();
        throw SyntaxError(t.line, t.col, message);
    }

    const Token& take() {
        if (at_end()) fail("unexpected end of input");
        return toks_[pos_++];
    }

    bool is_punct(const Token& t, std::string_view text) const {
        return t.type == Token::Type::Punct && t.text == text;
    }

    bool at_punct(std::string_view text, std::size_t ahead = 0) const {
        return is_punct(peek(ahead), text);
    }

    void expect_punct(std::string_view text) {
        if (!at_punct(text)) fail("expected '" + std::string(text) + "'");
        ++pos_;
    }

    bool at_word(std::string_view word, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.type == Token::Type::Ident && t.text == word;
    }

    bool at_plain_ident(std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.type == Token::Type::Ident && !is_keyword(t.text);
    }

    std::string take_name(const char* what) {
        if (!at_plain_ident()) fail(std::string("expected ") + what);
        return take().text;
    }

    ATerm parse_type() { return ATerm::appl("Type", {ident_leaf(take_name("a type name"))}); }

    ATerm top_item() {
        if (at_plain_ident() && at_plain_ident(1) && at_punct("(", 2)) return method_decl();
        return statement();
    }

    ATerm method_decl() {
        ATerm type = parse_type();
        ATerm name = make_ident(take_name("a method name"));
        expect_punct("(");
        std::vector<ATerm> params;
        if (!at_punct(")")) {
            while (true) {
                ATerm ptype = parse_type();
                ATerm pname = make_ident(take_name("a parameter name"));
                params.push_back(ATerm::appl("Param", {std::move(ptype), std::move(pname)}));
                if (!at_punct(",")) break;
                ++pos_;
            }
        }
        expect_punct(")");
        if (!at_punct("{")) fail("expected '{' to begin the method body");
        ATerm body = braced_statements();
        return ATerm::appl("MethodDecl", {std::move(type), std::move(name),
                                          ATerm::list(std::move(params)),
                                          ATerm::appl("Block", {std::move(body)})});
    }

    // `{ stmt* }` as a bare statement list; used wherever braces are layout.
    ATerm braced_statements() {
        expect_punct("{");
        std::vector<ATerm> stmts;
        while (!at_punct("}")) {
            if (at_end()) fail("expected '}'");
            stmts.push_back(statement());
        }
        ++pos_;
        return ATerm::list(std::move(stmts));
    }

    // A loop/branch body: braces are optional around a single statement and
    // never appear in the tree, so both spellings parse identically.
    ATerm body() {
        if (at_punct("{")) return braced_statements();
        std::vector<ATerm> one;
        one.push_back(statement());
        return ATerm::list(std::move(one));
    }

    ATerm statement() {
        if (at_word("if")) return if_statement();
        if (at_word("while")) return while_statement();
        if (at_word("for")) return for_statement();
        if (at_word("return")) return return_statement();
        if (at_punct("{")) return ATerm::appl("Block", {braced_statements()});
        if (at_plain_ident() && at_plain_ident(1) &&
            (at_punct("=", 2) || at_punct(";", 2)))
            return local_var_decl();
        ATerm e = expression();
        expect_punct(";");
        return ATerm::appl("ExpStmt", {std::move(e)});
    }

    ATerm local_var_decl() {
        ATerm type = parse_type();
        ATerm name = make_ident(take_name("a variable name"));
        std::vector<ATerm> kids{std::move(type), std::move(name)};
        if (at_punct("=")) {
            ++pos_;
            kids.push_back(expression());
        }
        expect_punct(";");
        return ATerm::appl("LocalVarDecl", std::move(kids));
    }

    ATerm if_statement() {
        ++pos_; // if
        expect_punct("(");
        ATerm cond = expression();
        expect_punct(")");
        ATerm then = body();
        if (at_word("else")) {
            ++pos_;
            ATerm other = body();
            return ATerm::appl("IfStmt", {std::move(cond), std::move(then), std::move(other)});
        }
        return ATerm::appl("IfStmt", {std::move(cond), std::move(then)});
    }

    ATerm while_statement() {
        ++pos_; // while
        expect_punct("(");
        ATerm cond = expression();
        expect_punct(")");
        ATerm b = body();
        return ATerm::appl("WhileStmt", {std::move(cond), std::move(b)});
    }

    ATerm return_statement() {
        ++pos_; // return
        if (at_punct(";")) {
            ++pos_;
            return ATerm::appl("Return");
        }
        ATerm e = expression();
        expect_punct(";");
        return ATerm::appl("Return", {std::move(e)});
    }

    ATerm for_statement() {
        ++pos_; // for
        expect_punct("(");
        if (at_plain_ident() && at_plain_ident(1) && at_punct(":", 2)) {
            ATerm type = parse_type();
            ATerm name = make_ident(take().text);
            ++pos_; // :
            ATerm seq = expression();
            expect_punct(")");
            ATerm b = body();
            ATerm each = ATerm::appl("ForEach", {std::move(type), std::move(name),
                                                 std::move(seq), std::move(b)});
            return ATerm::appl("ForStmt", {std::move(each)});
        }
        ATerm init = ATerm::list();
        if (!at_punct(";")) {
            if (at_plain_ident() && at_plain_ident(1)) {
                ATerm type = parse_type();
                ATerm name = make_ident(take_name("a variable name"));
                std::vector<ATerm> kids{std::move(type), std::move(name)};
                if (at_punct("=")) {
                    ++pos_;
                    kids.push_back(expression());
                }
                init = ATerm::appl("LocalVarDecl", std::move(kids));
            } else {
                init = expression();
            }
        }
        expect_punct(";");
        ATerm cond = at_punct(";") ? ATerm::list() : expression();
        expect_punct(";");
        ATerm update = at_punct(")") ? ATerm::list() : expression();
        expect_punct(")");
        ATerm b = body();
        ATerm basic = ATerm::appl("BasicFor", {std::move(init), std::move(cond),
                                               std::move(update), std::move(b)});
        return ATerm::appl("ForStmt", {std::move(basic)});
    }

    ATerm expression() { return assignment(); }

    ATerm assignment() {
        ATerm lhs = equality();
        const char* label = at_punct("=")    ? "Assign"
                            : at_punct("+=") ? "AddAssign"
                            : at_punct("-=") ? "SubAssign"
                                             : nullptr;
        if (!label) return lhs;
        ++pos_;
        ATerm rhs = assignment();
        return ATerm::appl(label, {std::move(lhs), std::move(rhs)});
    }

    ATerm equality() {
        ATerm lhs = relational();
        while (true) {
            const char* label = at_punct("==")   ? "Eq"
                                : at_punct("!=") ? "Neq"
                                                 : nullptr;
            if (!label) return lhs;
            ++pos_;
            ATerm rhs = relational();
            lhs = ATerm::appl(label, {std::move(lhs), std::move(rhs)});
        }
    }

    ATerm relational() {
        ATerm lhs = additive();
        while (true) {
            const char* label = at_punct("<")    ? "Lt"
                                : at_punct(">")  ? "Gt"
                                : at_punct("<=") ? "Le"
                                : at_punct(">=") ? "Ge"
                                                 : nullptr;
            if (!label) return lhs;
            ++pos_;
            ATerm rhs = additive();
            lhs = ATerm::appl(label, {std::move(lhs), std::move(rhs)});
        }
    }

    ATerm additive() {
        ATerm lhs = multiplicative();
        while (true) {
            const char* label = at_punct("+")   ? "Add"
                                : at_punct("-") ? "Sub"
                                                : nullptr;
            if (!label) return lhs;
            ++pos_;
            ATerm rhs = multiplicative();
            lhs = ATerm::appl(label, {std::move(lhs), std::move(rhs)});
        }
    }

    ATerm multiplicative() {
        ATerm lhs = postfix();
        while (true) {
            const char* label = at_punct("*")   ? "Mul"
                                : at_punct("/") ? "Div"
                                : at_punct("%") ? "Rem"
                                                : nullptr;
            if (!label) return lhs;
            ++pos_;
            ATerm rhs = postfix();
            lhs = ATerm::appl(label, {std::move(lhs), std::move(rhs)});
        }
    }

    std::vector<ATerm> call_args() {
        expect_punct("(");
        std::vector<ATerm> args;
        if (!at_punct(")")) {
            while (true) {
                args.push_back(expression());
                if (!at_punct(",")) break;
                ++pos_;
            }
        }
        expect_punct(")");
        return args;
    }

    ATerm postfix() {
        ATerm e = primary();
        while (true) {
            if (at_punct(".")) {
                ++pos_;
                ATerm field = make_ident(take_name("a member name"));
                if (at_punct("(")) {
                    ATerm callee = ATerm::appl("FieldAccess", {std::move(e), std::move(field)});
                    e = ATerm::appl("MethodInv",
                                    {std::move(callee), ATerm::list(call_args())});
                } else {
                    e = ATerm::appl("FieldAccess", {std::move(e), std::move(field)});
                }
            } else if (at_punct("[")) {
                ++pos_;
                ATerm index = expression();
                expect_punct("]");
                e = ATerm::appl("ArrayIndex", {std::move(e), std::move(index)});
            } else if (at_punct("++")) {
                ++pos_;
                e = ATerm::appl("PostIncrement", {std::move(e)});
            } else if (at_punct("--")) {
                ++pos_;
                e = ATerm::appl("PostDecrement", {std::move(e)});
            } else {
                return e;
            }
        }
    }

    ATerm primary() {
        const Token& t = peek();
        if (t.type == Token::Type::Int) {
            ++pos_;
            return ATerm::appl("Lit", {ATerm::integer(t.ival)});
        }
        if (at_punct("-") && peek(1).type == Token::Type::Int) {
            ++pos_;
            long long v = take().ival;
            return ATerm::appl("Lit", {ATerm::integer(-v)});
        }
        if (t.type == Token::Type::Str) {
            ++pos_;
            return ATerm::appl("Lit", {ATerm::appl(t.text)});
        }
        if (at_punct("(")) {
            ++pos_;
            ATerm e = expression();
            expect_punct(")");
            return e;
        }
        if (at_plain_ident()) {
            std::string name = take().text;
            if (at_punct("(")) {
                ATerm callee = ATerm::appl("Name", {make_ident(name)});
                return ATerm::appl("MethodInv", {std::move(callee), ATerm::list(call_args())});
            }
            return make_var(name);
        }
        fail("expected an expression");
    }
};

} // namespace

ATerm parse_source(std::string_view text, const LanguageProfile& /*profile*/) {
    return Parser(Lexer(text).run()).run();
}

} // namespace cpat
