#ifndef RAKIT_ERRORS_HH
#define RAKIT_ERRORS_HH 1

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rakit
{
    /// Malformed input text. Line and column are 1-based; column 0 means "whole line".
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(const std::string & message, std::size_t line, std::size_t column);

        [[nodiscard]] auto line() const noexcept -> std::size_t { return _line; }
        [[nodiscard]] auto column() const noexcept -> std::size_t { return _column; }
        [[nodiscard]] auto reason() const -> const std::string & { return _reason; }

    private:
        std::string _reason;
        std::size_t _line, _column;
    };

    /// An input that parsed but violates a structural precondition of an operation.
    class InvalidInput : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A configurable search budget ran out before a verdict was reached.
    class BudgetExceeded : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}

#endif
