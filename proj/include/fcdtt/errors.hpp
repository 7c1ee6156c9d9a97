#pragma once

#include <stdexcept>
#include <string>

namespace fcdtt {

// Error taxonomy mirrored by the CLI exit codes:
//   UsageError -> 1, InputError -> 2, InsufficientDataError -> 3,
//   anything else -> 4.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class InsufficientDataError : public std::runtime_error {
public:
    explicit InsufficientDataError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fcdtt
