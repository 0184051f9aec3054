#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmap {

/// Malformed input file. Carries the 1-based line and column of the offending
/// token, or of the enclosing element for semantic errors.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace qmap
