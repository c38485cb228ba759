#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ccl {

enum class TokenKind : std::uint8_t {
    Keyword,
    Identifier,
    NumberLiteral,
    StringLiteral,
    CharLiteral,
    BooleanNullLiteral,
    Operator,
    Punctuation,
};

std::string_view to_string(TokenKind kind);

/// One lexical unit of Java source. Line and column are 1-based; columns
/// count Unicode code points, not bytes.
struct Token {
    TokenKind kind{};
    std::string text;
    std::uint32_t line = 1;
    std::uint32_t column = 1;

    bool operator==(const Token&) const = default;
};

/// Type-2 normalized form of a token: identifiers collapse to "$id", every
/// literal kind to "$lit", everything else keeps its spelling.
struct NormalizedToken {
    std::string symbol;

    bool operator==(const NormalizedToken&) const = default;
};

inline constexpr std::string_view kIdentifierMarker = "$id";
inline constexpr std::string_view kLiteralMarker = "$lit";

struct LexWarning {
    std::uint32_t line = 0;
    std::uint32_t column = 0;
    std::string message;
};

struct LexResult {
    std::vector<Token> tokens;
    std::vector<LexWarning> warnings;
};

/**
 * Error-tolerant Java tokenizer.
 *
 * Comments and whitespace produce no tokens. String, char and text-block
 * literals are single tokens including their quotes. Operators are split by
 * maximal munch against the Java operator table. An unterminated literal or
 * block comment never aborts: the rest of the construct becomes one literal
 * (or is skipped) and a warning is recorded.
 */
LexResult lex_java(std::string_view source);

/// Convenience wrapper over lex_java() that drops the warnings.
std::vector<Token> tokenize(std::string_view source);

bool is_java_keyword(std::string_view word);

NormalizedToken normalize(const Token& token);
std::vector<NormalizedToken> normalize(const std::vector<Token>& tokens);

}  // namespace ccl
