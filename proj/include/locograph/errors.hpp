#pragma once

#include <stdexcept>
#include <string>

namespace loco {

// Parameter/usage violations (CLI exit code 2).
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

// Sampling from an empty support (CLI exit code 3).
struct empty_support_error : std::runtime_error {
    explicit empty_support_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure, e.g. a non-exact division in the Euler
// recurrence (CLI exit code 4). Always indicates a bug or corrupted input.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

// File parse failure; carries the 1-based line number (CLI exit code 2).
struct parse_error : std::runtime_error {
    parse_error(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

}  // namespace loco
