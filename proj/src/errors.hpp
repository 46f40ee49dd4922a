#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace qrel {

// Input violated a documented precondition. Carries a machine-readable
// witness object (counterexample family, offending element, ...) that the
// CLI emits verbatim.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::string message, nlohmann::json witness = nullptr)
        : std::runtime_error(std::move(message)), witness_(std::move(witness)) {}

    const nlohmann::json& witness() const { return witness_; }

private:
    nlohmann::json witness_;
};

// Malformed input text; line/column refer to the named input.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::string input_name, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(message)),
          input_name_(std::move(input_name)),
          line_(line),
          column_(column) {}

    const std::string& input_name() const { return input_name_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string input_name_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace qrel
