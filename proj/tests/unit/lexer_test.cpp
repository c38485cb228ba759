#include <random>

#include <doctest.h>

#include "ccl/lexer.hpp"
#include "oracles.hpp"

using namespace ccl;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) out.push_back(t.text);
    return out;
}

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
    std::vector<TokenKind> out;
    for (const auto& t : tokens) out.push_back(t.kind);
    return out;
}

}  // namespace

TEST_CASE("declaration with trailing comment") {
    const auto tokens = tokenize("int x = 42; // hi");
    CHECK(texts(tokens) == std::vector<std::string>{"int", "x", "=", "42", ";"});
    CHECK(kinds(tokens) == std::vector<TokenKind>{TokenKind::Keyword, TokenKind::Identifier,
                                                  TokenKind::Operator, TokenKind::NumberLiteral,
                                                  TokenKind::Punctuation});
}

TEST_CASE("empty input and comments produce nothing") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("/* only a comment */").empty());
    CHECK(tokenize("// line\n   \t\n/** doc */").empty());
}

TEST_CASE("positions are 1-based and count code points") {
    const auto tokens = tokenize("a\n  \"é\" b");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].line == 1);
    CHECK(tokens[0].column == 1);
    CHECK(tokens[1].line == 2);
    CHECK(tokens[1].column == 3);
    CHECK(tokens[2].column == 7);
}

TEST_CASE("maximal munch over operators") {
    CHECK(texts(tokenize("a>>>=b")) == std::vector<std::string>{"a", ">>>=", "b"});
    CHECK(texts(tokenize("i+++j")) == std::vector<std::string>{"i", "++", "+", "j"});
    CHECK(texts(tokenize("x->y")) == std::vector<std::string>{"x", "->", "y"});
    CHECK(texts(tokenize("List::of")) == std::vector<std::string>{"List", "::", "of"});
    CHECK(tokenize("List::of")[1].kind == TokenKind::Punctuation);
    CHECK(texts(tokenize("f(a...)")) == std::vector<std::string>{"f", "(", "a", "...", ")"});
}

TEST_CASE("literals are single tokens") {
    auto tokens = tokenize(R"(s = "a \" b"; c = '\''; n = 0x1F_FFL + 1.5e-3f + 0b1010;)");
    CHECK(texts(tokens) == std::vector<std::string>{"s", "=", "\"a \\\" b\"", ";", "c", "=", "'\\''", ";",
                                                    "n", "=", "0x1F_FFL", "+", "1.5e-3f", "+", "0b1010", ";"});
    CHECK(tokens[2].kind == TokenKind::StringLiteral);
    CHECK(tokens[6].kind == TokenKind::CharLiteral);
    CHECK(tokens[10].kind == TokenKind::NumberLiteral);

    tokens = tokenize("String t = \"\"\"\n  hi \"there\"\n  \"\"\";");
    REQUIRE(tokens.size() == 5);
    CHECK(tokens[3].kind == TokenKind::StringLiteral);
    CHECK(tokens[3].text == "\"\"\"\n  hi \"there\"\n  \"\"\"");
}

TEST_CASE("keywords and boolean/null literals") {
    CHECK(is_java_keyword("class"));
    CHECK(is_java_keyword("goto"));
    CHECK_FALSE(is_java_keyword("true"));
    CHECK_FALSE(is_java_keyword("record"));
    const auto tokens = tokenize("if (flag == true) return null;");
    CHECK(tokens[0].kind == TokenKind::Keyword);
    CHECK(tokens[4].kind == TokenKind::BooleanNullLiteral);
    CHECK(tokens[7].kind == TokenKind::BooleanNullLiteral);
}

TEST_CASE("unterminated constructs warn instead of failing") {
    SUBCASE("string ends at the newline") {
        const auto r = lex_java("s = \"abc\nnext;");
        CHECK(r.warnings.size() == 1);
        CHECK(texts(r.tokens) == std::vector<std::string>{"s", "=", "\"abc", "next", ";"});
    }
    SUBCASE("block comment runs to end of file") {
        const auto r = lex_java("a /* never closed\n b c");
        CHECK(r.warnings.size() == 1);
        CHECK(texts(r.tokens) == std::vector<std::string>{"a"});
    }
    SUBCASE("text block runs to end of file") {
        const auto r = lex_java("x = \"\"\"\nabc");
        CHECK(r.warnings.size() == 1);
        CHECK(r.tokens.back().kind == TokenKind::StringLiteral);
    }
    SUBCASE("stray character is skipped") {
        const auto r = lex_java("a # b");
        CHECK(r.warnings.size() == 1);
        CHECK(texts(r.tokens) == std::vector<std::string>{"a", "b"});
    }
}

TEST_CASE("normalization mapping") {
    const auto symbols = normalize(tokenize("x = 42"));
    REQUIRE(symbols.size() == 3);
    CHECK(symbols[0].symbol == "$id");
    CHECK(symbols[1].symbol == "=");
    CHECK(symbols[2].symbol == "$lit");
    CHECK(testing::symbols_of("if (") == std::vector<std::string>{"if", "("});
    CHECK(testing::symbols_of("a = b;") == testing::symbols_of("foo = bar;"));
    CHECK(testing::symbols_of("s = \"x\"; c = 'q'; b = false;") ==
          testing::symbols_of("s = 7; c = 1.0; b = null;"));
}

TEST_CASE("property: renaming identifiers and literals keeps the symbols") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> pieces{"int", "if", "(", ")", "{", "}", ";", "=", "+", "==",
                                          "return", ".", ",", "ID", "LIT"};
    for (int round = 0; round < 300; ++round) {
        std::string left;
        std::string right;
        const int n = static_cast<int>(rng() % 60);
        for (int k = 0; k < n; ++k) {
            const auto& p = pieces[rng() % pieces.size()];
            if (p == "ID") {
                left += "v" + std::to_string(rng() % 5);
                right += "name_" + std::to_string(rng() % 7);
            } else if (p == "LIT") {
                left += std::to_string(rng() % 1000);
                right += (rng() % 2) ? "\"str\"" : "'c'";
            } else {
                left += p;
                right += p;
            }
            left += ' ';
            right += (rng() % 2) ? "\n" : "  ";
        }
        const auto a = tokenize(left);
        const auto sa = normalize(a);
        CHECK(sa.size() == a.size());
        CHECK(testing::symbols_of(left) == testing::symbols_of(right));
        // Normalizing again, with markers taken as opaque text, changes nothing.
        for (std::size_t k = 0; k < a.size(); ++k) {
            Token t = a[k];
            t.text = sa[k].symbol;
            if (t.kind == TokenKind::Identifier) CHECK(normalize(t).symbol == kIdentifierMarker);
            else if (t.kind != TokenKind::Keyword && t.kind != TokenKind::Operator &&
                     t.kind != TokenKind::Punctuation)
                CHECK(normalize(t).symbol == kLiteralMarker);
            else CHECK(normalize(t).symbol == sa[k].symbol);
        }
    }
}
