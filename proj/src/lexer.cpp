#include <cctype>
#include <unordered_set>

#include "lipdyn/dsl.hpp"

namespace lipdyn::dsl {

namespace {

const std::unordered_set<std::string> kKeywords = {"map", "piecewise", "else", "abs"};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(const std::string& source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto push = [&](TokenKind kind, std::size_t len) {
        tokens.push_back({kind, source.substr(i, len), line, col, i});
        advance(len);
    };

    while (i < source.size()) {
        char c = source[i];
        if (c == '#') {
            while (i < source.size() && source[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < source.size() && is_digit(source[i + 1]))) {
            std::size_t j = i;
            while (j < source.size() && is_digit(source[j])) ++j;
            if (j < source.size() && source[j] == '.') {
                ++j;
                while (j < source.size() && is_digit(source[j])) ++j;
            }
            if (j < source.size() && (source[j] == 'e' || source[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < source.size() && (source[k] == '+' || source[k] == '-')) ++k;
                if (k < source.size() && is_digit(source[k])) {
                    while (k < source.size() && is_digit(source[k])) ++k;
                    j = k;
                }
            }
            push(TokenKind::Number, j - i);
            continue;
        }
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < source.size() && is_ident_char(source[j])) ++j;
            std::string word = source.substr(i, j - i);
            push(kKeywords.count(word) ? TokenKind::Keyword : TokenKind::Identifier, j - i);
            continue;
        }
        switch (c) {
            case '+':
            case '-':
            case '*':
            case '/':
            case '^':
                push(TokenKind::Operator, 1);
                continue;
            case '<':
            case '>':
                push(TokenKind::Operator, (i + 1 < source.size() && source[i + 1] == '=') ? 2 : 1);
                continue;
            case '=':
                push(TokenKind::Operator, (i + 1 < source.size() && source[i + 1] == '>') ? 2 : 1);
                continue;
            case '(':
            case ')':
            case '{':
            case '}':
            case ';':
            case ',':
                push(TokenKind::Punctuation, 1);
                continue;
            default:
                throw LexError(std::string("illegal character '") + c + "'", line, col);
        }
    }
    tokens.push_back({TokenKind::End, "", line, col, i});
    return tokens;
}

}  // namespace lipdyn::dsl
