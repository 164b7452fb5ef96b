#ifndef RAKIT_SRC_TEXT_HH
#define RAKIT_SRC_TEXT_HH 1

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rakit::text
{
    struct Token
    {
        std::string_view value;
        std::size_t column;
    };

    struct Line
    {
        std::size_t number;
        std::vector<Token> tokens;
    };

    /// Splits `input` into non-empty lines of whitespace-separated tokens, dropping
    /// everything after a '#'. The returned views point into `input`.
    auto tokenize(std::string_view input) -> std::vector<Line>;

    auto parse_size(const Token & token, std::size_t line) -> std::size_t;

    [[noreturn]] auto fail(const std::string & message, std::size_t line, std::size_t column) -> void;
}

#endif
