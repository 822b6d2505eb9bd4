#pragma once

#include <stdexcept>
#include <string>

namespace mcen {

// An input value violates a documented precondition.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structured text (CSV) could not be parsed; messages carry 1-based line numbers.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A file could not be opened, read, or written.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation exceeds a configured budget.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mcen
