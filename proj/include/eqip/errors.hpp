#ifndef EQIP_ERRORS_HPP
#define EQIP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqip {

/// A caller broke a precondition (dimension mismatch, out-of-range code, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The requested solver/mode combination is not supported.
class UnsupportedConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed scalar token or instance file. Line and column are 1-based;
/// line is 0 when the error concerns a standalone token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(format(message, line, column)),
          detail_(std::move(message)), line_(line), column_(column) {}

    const std::string& detail() const noexcept { return detail_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        if (line == 0) return "position " + std::to_string(column) + ": " + message;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    }

    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

/// Instance failed validation; carries every violation found, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out;
        for (const auto& s : v) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

} // namespace eqip

#endif // EQIP_ERRORS_HPP
