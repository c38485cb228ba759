#include "ccl/lexer.hpp"

#include <algorithm>
#include <array>

namespace ccl {

namespace {

// Java 17 reserved keywords. Contextual keywords (var, record, yield,
// sealed, permits, module, ...) lex as identifiers.
constexpr std::array<std::string_view, 51> kKeywords = {
    "_",          "abstract",  "assert",     "boolean",   "break",
    "byte",       "case",      "catch",      "char",      "class",
    "const",      "continue",  "default",    "do",        "double",
    "else",       "enum",      "extends",    "final",     "finally",
    "float",      "for",       "goto",       "if",        "implements",
    "import",     "instanceof", "int",       "interface", "long",
    "native",     "new",       "package",    "private",   "protected",
    "public",     "return",    "short",      "static",    "strictfp",
    "super",      "switch",    "synchronized", "this",    "throw",
    "throws",     "transient", "try",        "void",      "volatile",
    "while",
};

// Longest first so the first hit is the maximal munch.
constexpr std::array<std::string_view, 38> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "++", "--", "&&", "||", "==",
    "!=",   "<=",  ">=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=",
    "%=",   "<<",  ">>",  "=",   ">",  "<",  "!",  "~",  "?",  ":",
    "+",    "-",   "*",   "/",   "&",  "|",  "^",  "%",
};

constexpr std::array<std::string_view, 12> kSeparators = {
    "...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@",
};

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(char c) {
    return is_ascii_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool is_ident_start(char c) {
    const auto u = static_cast<unsigned char>(c);
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || u >= 0x80;
}

bool is_ident_part(char c) { return is_ident_start(c) || is_ascii_digit(c); }

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    LexResult run() {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\f' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (!eof() && peek() != '\n' && peek() != '\r') advance();
            } else if (c == '/' && peek(1) == '*') {
                block_comment();
            } else if (is_ident_start(c)) {
                identifier();
            } else if (is_ascii_digit(c) || (c == '.' && is_ascii_digit(peek(1)))) {
                number();
            } else if (c == '"') {
                if (peek(1) == '"' && peek(2) == '"') {
                    text_block();
                } else {
                    quoted('"', TokenKind::StringLiteral);
                }
            } else if (c == '\'') {
                quoted('\'', TokenKind::CharLiteral);
            } else if (!symbol()) {
                warn(line_, column_, std::string("unexpected character '") + c + "'");
                advance();
            }
        }
        return std::move(result_);
    }

private:
    bool eof() const { return pos_ >= src_.size(); }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        const char c = src_[pos_++];
        if (c == '\n' || (c == '\r' && peek() != '\n')) {
            ++line_;
            column_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80 && c != '\r') {
            ++column_;
        }
    }

    void emit(TokenKind kind, std::size_t begin, std::uint32_t line, std::uint32_t column) {
        result_.tokens.push_back(
            Token{kind, std::string(src_.substr(begin, pos_ - begin)), line, column});
    }

    void warn(std::uint32_t line, std::uint32_t column, std::string message) {
        result_.warnings.push_back(LexWarning{line, column, std::move(message)});
    }

    void block_comment() {
        const auto line = line_, column = column_;
        advance();
        advance();
        while (!eof()) {
            if (peek() == '*' && peek(1) == '/') {
                advance();
                advance();
                return;
            }
            advance();
        }
        warn(line, column, "unterminated block comment");
    }

    void identifier() {
        const auto begin = pos_;
        const auto line = line_, column = column_;
        while (!eof() && is_ident_part(peek())) advance();
        const auto word = src_.substr(begin, pos_ - begin);
        TokenKind kind = TokenKind::Identifier;
        if (word == "true" || word == "false" || word == "null") {
            kind = TokenKind::BooleanNullLiteral;
        } else if (is_java_keyword(word)) {
            kind = TokenKind::Keyword;
        }
        emit(kind, begin, line, column);
    }

    void digits(bool (*accept)(char)) {
        while (!eof() && (accept(peek()) || peek() == '_')) advance();
    }

    void exponent(char lower, char upper) {
        if (peek() != lower && peek() != upper) return;
        const char sign = peek(1);
        if (is_ascii_digit(sign) || ((sign == '+' || sign == '-') && is_ascii_digit(peek(2)))) {
            advance();
            if (sign == '+' || sign == '-') advance();
            digits(is_ascii_digit);
        }
    }

    void number() {
        const auto begin = pos_;
        const auto line = line_, column = column_;
        const char next = peek(1);
        if (peek() == '0' && (next == 'x' || next == 'X')) {
            advance();
            advance();
            digits(is_hex_digit);
            if (peek() == '.') {
                advance();
                digits(is_hex_digit);
            }
            exponent('p', 'P');
        } else if (peek() == '0' && (next == 'b' || next == 'B')) {
            advance();
            advance();
            digits([](char c) { return c == '0' || c == '1'; });
        } else {
            digits(is_ascii_digit);
            if (peek() == '.' && !(peek(1) == '.' && peek(2) == '.')) {
                advance();
                digits(is_ascii_digit);
            }
            exponent('e', 'E');
        }
        const char suffix = peek();
        if (suffix == 'l' || suffix == 'L' || suffix == 'f' || suffix == 'F' || suffix == 'd' ||
            suffix == 'D') {
            advance();
        }
        emit(TokenKind::NumberLiteral, begin, line, column);
    }

    void quoted(char quote, TokenKind kind) {
        const auto begin = pos_;
        const auto line = line_, column = column_;
        advance();
        while (!eof()) {
            const char c = peek();
            if (c == quote) {
                advance();
                emit(kind, begin, line, column);
                return;
            }
            if (c == '\n' || c == '\r') break;
            if (c == '\\' && pos_ + 1 < src_.size() && peek(1) != '\n' && peek(1) != '\r') {
                advance();
            }
            advance();
        }
        emit(kind, begin, line, column);
        warn(line, column,
             kind == TokenKind::StringLiteral ? "unterminated string literal"
                                              : "unterminated char literal");
    }

    void text_block() {
        const auto begin = pos_;
        const auto line = line_, column = column_;
        advance();
        advance();
        advance();
        while (!eof()) {
            if (peek() == '\\' && pos_ + 1 < src_.size()) {
                advance();
                advance();
                continue;
            }
            if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
                advance();
                advance();
                advance();
                emit(TokenKind::StringLiteral, begin, line, column);
                return;
            }
            advance();
        }
        emit(TokenKind::StringLiteral, begin, line, column);
        warn(line, column, "unterminated text block");
    }

    bool symbol() {
        const auto rest = src_.substr(pos_);
        auto try_table = [&](auto const& table, TokenKind kind) {
            for (const auto op : table) {
                if (rest.starts_with(op)) {
                    const auto begin = pos_;
                    const auto line = line_, column = column_;
                    for (std::size_t i = 0; i < op.size(); ++i) advance();
                    emit(kind, begin, line, column);
                    return true;
                }
            }
            return false;
        };
        // "::" is a separator but would otherwise lose to the ":" operator.
        if (rest.starts_with("::")) return try_table(kSeparators, TokenKind::Punctuation);
        return try_table(kOperators, TokenKind::Operator) ||
               try_table(kSeparators, TokenKind::Punctuation);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t column_ = 1;
    LexResult result_;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Identifier: return "identifier";
        case TokenKind::NumberLiteral: return "number-literal";
        case TokenKind::StringLiteral: return "string-literal";
        case TokenKind::CharLiteral: return "char-literal";
        case TokenKind::BooleanNullLiteral: return "boolean-null-literal";
        case TokenKind::Operator: return "operator";
        case TokenKind::Punctuation: return "punctuation";
    }
    return "unknown";
}

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult lex_java(std::string_view source) { return Scanner(source).run(); }

std::vector<Token> tokenize(std::string_view source) { return lex_java(source).tokens; }

NormalizedToken normalize(const Token& token) {
    switch (token.kind) {
        case TokenKind::Identifier:
            return {std::string(kIdentifierMarker)};
        case TokenKind::NumberLiteral:
        case TokenKind::StringLiteral:
        case TokenKind::CharLiteral:
        case TokenKind::BooleanNullLiteral:
            return {std::string(kLiteralMarker)};
        case TokenKind::Keyword:
        case TokenKind::Operator:
        case TokenKind::Punctuation:
            break;
    }
    return {token.text};
}

std::vector<NormalizedToken> normalize(const std::vector<Token>& tokens) {
    std::vector<NormalizedToken> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(normalize(t));
    return out;
}

}  // namespace ccl
