// Copyright 2026 The ChatIYP Authors
// SPDX-License-Identifier: Apache-2.0

#include "iyp/cypher/lexer.hpp"

namespace iyp::cypher {

SyntaxError::SyntaxError(const std::string& message, std::size_t line, std::size_t column,
                         std::string token)
    : QueryError("syntax error at line " + std::to_string(line) + ", column " +
                 std::to_string(column) +
                 (token.empty() ? std::string(" (end of input)") : " near '" + token + "'") +
                 ": " + message),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

bool ident_start(unsigned char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}
bool ident_char(unsigned char c) noexcept { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) noexcept { return c >= '0' && c <= '9'; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= src_.size()) {
                out.push_back(std::move(t));
                return out;
            }
            lex_one(t);
            out.push_back(std::move(t));
        }
    }

private:
    [[nodiscard]] char peek(std::size_t ahead = 0) const noexcept {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() noexcept {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message, std::size_t line, std::size_t col,
                           std::string token) const {
        throw SyntaxError(message, line, col, std::move(token));
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') {
                    advance();
                }
            } else if (c == '/' && peek(1) == '*') {
                const std::size_t l = line_;
                const std::size_t col = column_;
                advance();
                advance();
                while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) {
                    advance();
                }
                if (pos_ >= src_.size()) {
                    fail("unterminated comment", l, col, "/*");
                }
                advance();
                advance();
            } else {
                return;
            }
        }
    }

    void lex_one(Token& t) {
        const char c = peek();
        if (ident_start(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(peek()))) {
                advance();
            }
            t.kind = TokenKind::identifier;
            t.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        if (digit(c)) {
            lex_number(t);
            return;
        }
        if (c == '\'' || c == '"') {
            lex_string(t, c);
            return;
        }
        if (c == '`') {
            advance();
            while (pos_ < src_.size() && peek() != '`') {
                t.text += advance();
            }
            if (pos_ >= src_.size()) {
                fail("unterminated backtick identifier", t.line, t.column, "`" + t.text);
            }
            advance();
            if (t.text.empty()) {
                fail("empty backtick identifier", t.line, t.column, "``");
            }
            t.kind = TokenKind::quoted_identifier;
            return;
        }

        auto single = [&](TokenKind kind) {
            t.kind = kind;
            t.text = std::string(1, advance());
        };
        switch (c) {
            case '(': single(TokenKind::lparen); return;
            case ')': single(TokenKind::rparen); return;
            case '[': single(TokenKind::lbracket); return;
            case ']': single(TokenKind::rbracket); return;
            case '{': single(TokenKind::lbrace); return;
            case '}': single(TokenKind::rbrace); return;
            case ':': single(TokenKind::colon); return;
            case ',': single(TokenKind::comma); return;
            case '.': single(TokenKind::dot); return;
            case '-': single(TokenKind::dash); return;
            case '*': single(TokenKind::star); return;
            case '|': single(TokenKind::pipe); return;
            case ';': single(TokenKind::semicolon); return;
            case '=': single(TokenKind::eq); return;
            case '>':
                if (peek(1) == '=') {
                    advance();
                    advance();
                    t.kind = TokenKind::ge;
                    t.text = ">=";
                    return;
                }
                single(TokenKind::gt);
                return;
            case '<':
                if (peek(1) == '=' || peek(1) == '>') {
                    t.kind = peek(1) == '=' ? TokenKind::le : TokenKind::ne;
                    t.text = peek(1) == '=' ? "<=" : "<>";
                    advance();
                    advance();
                    return;
                }
                single(TokenKind::lt);
                return;
            case '!':
                if (peek(1) == '=') {
                    advance();
                    advance();
                    t.kind = TokenKind::ne;
                    t.text = "!=";
                    return;
                }
                break;
            default: break;
        }
        fail("unexpected character", t.line, t.column, std::string(1, c));
    }

    void lex_number(Token& t) {
        const std::size_t start = pos_;
        bool is_float = false;
        while (digit(peek())) {
            advance();
        }
        if (peek() == '.' && digit(peek(1))) {
            is_float = true;
            advance();
            while (digit(peek())) {
                advance();
            }
        }
        if (peek() == 'e' || peek() == 'E') {
            const std::size_t sign = (peek(1) == '+' || peek(1) == '-') ? 1 : 0;
            if (digit(peek(1 + sign))) {
                is_float = true;
                advance();
                if (sign) {
                    advance();
                }
                while (digit(peek())) {
                    advance();
                }
            }
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        if (ident_start(static_cast<unsigned char>(peek()))) {
            fail("malformed number", t.line, t.column, t.text + peek());
        }
        t.kind = is_float ? TokenKind::floating : TokenKind::integer;
    }

    void lex_string(Token& t, char quote) {
        advance();
        for (;;) {
            if (pos_ >= src_.size()) {
                fail("unterminated string literal", t.line, t.column, quote + t.text);
            }
            const char c = advance();
            if (c == quote) {
                break;
            }
            if (c != '\\') {
                t.text += c;
                continue;
            }
            if (pos_ >= src_.size()) {
                fail("unterminated string literal", t.line, t.column, quote + t.text);
            }
            const char e = advance();
            switch (e) {
                case 'n': t.text += '\n'; break;
                case 't': t.text += '\t'; break;
                case 'r': t.text += '\r'; break;
                case '\\': t.text += '\\'; break;
                case '\'': t.text += '\''; break;
                case '"': t.text += '"'; break;
                default:
                    fail("unknown escape sequence", line_, column_ - 2, std::string("\\") + e);
            }
        }
        t.kind = TokenKind::string;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view query) { return Lexer(query).run(); }

std::string_view describe(TokenKind kind) noexcept {
    switch (kind) {
        case TokenKind::identifier: return "identifier";
        case TokenKind::quoted_identifier: return "quoted identifier";
        case TokenKind::integer: return "integer";
        case TokenKind::floating: return "float";
        case TokenKind::string: return "string";
        case TokenKind::lparen: return "'('";
        case TokenKind::rparen: return "')'";
        case TokenKind::lbracket: return "'['";
        case TokenKind::rbracket: return "']'";
        case TokenKind::lbrace: return "'{'";
        case TokenKind::rbrace: return "'}'";
        case TokenKind::colon: return "':'";
        case TokenKind::comma: return "','";
        case TokenKind::dot: return "'.'";
        case TokenKind::dash: return "'-'";
        case TokenKind::lt: return "'<'";
        case TokenKind::gt: return "'>'";
        case TokenKind::eq: return "'='";
        case TokenKind::ne: return "'<>'";
        case TokenKind::le: return "'<='";
        case TokenKind::ge: return "'>='";
        case TokenKind::star: return "'*'";
        case TokenKind::pipe: return "'|'";
        case TokenKind::semicolon: return "';'";
        case TokenKind::end: return "end of input";
    }
    return "token";
}

}  // namespace iyp::cypher
