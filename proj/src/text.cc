#include "text.hh"

#include <rakit/errors.hh>

#include <charconv>

namespace rakit
{
    ParseError::ParseError(const std::string & message, std::size_t line, std::size_t column) :
        std::runtime_error("line " + std::to_string(line) + (column != 0 ? ", column " + std::to_string(column) : "") + ": " + message),
        _reason(message),
        _line(line),
        _column(column)
    {
    }
}

namespace rakit::text
{
    auto tokenize(std::string_view input) -> std::vector<Line>
    {
        std::vector<Line> lines;
        std::size_t number = 0;
        while (! input.empty()) {
            ++number;
            auto eol = input.find('\n');
            auto line = input.substr(0, eol);
            input = (eol == std::string_view::npos) ? std::string_view{} : input.substr(eol + 1);

            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);

            Line current{number, {}};
            std::size_t pos = 0;
            auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
            while (pos < line.size()) {
                while (pos < line.size() && is_space(line[pos]))
                    ++pos;
                auto start = pos;
                while (pos < line.size() && ! is_space(line[pos]))
                    ++pos;
                if (pos > start)
                    current.tokens.push_back(Token{line.substr(start, pos - start), start + 1});
            }
            if (! current.tokens.empty())
                lines.push_back(std::move(current));
        }
        return lines;
    }

    auto parse_size(const Token & token, std::size_t line) -> std::size_t
    {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(token.value.data(), token.value.data() + token.value.size(), value);
        if (ec != std::errc{} || ptr != token.value.data() + token.value.size())
            fail("expected a non-negative integer, got '" + std::string{token.value} + "'", line, token.column);
        return value;
    }

    auto fail(const std::string & message, std::size_t line, std::size_t column) -> void
    {
        throw ParseError{message, line, column};
    }
}
