#pragma once

#include <stdexcept>
#include <string>

namespace holodyn {

// Bad user input: malformed map specs, flags, config files. CLI exit code 1.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure or violated mathematical precondition. CLI exit code 2.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A chart or evaluator was asked for a value outside its region of validity.
struct outside_validity_error : numeric_error {
    explicit outside_validity_error(const std::string& msg) : numeric_error(msg) {}
};

// Filesystem trouble. CLI exit code 3.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace holodyn
