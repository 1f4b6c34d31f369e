#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kpath {

// Malformed input file; the message names the offending line.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Result-count guard tripped. Enumeration aborts instead of silently
// truncating the result set.
class path_limit_exceeded : public std::runtime_error {
public:
    explicit path_limit_exceeded(std::uint64_t limit)
        : std::runtime_error("result path limit exceeded (" + std::to_string(limit) + ")"),
          limit_(limit) {}

    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
};

// Cooperative per-query deadline tripped (suite runner timeouts).
class enumeration_timeout : public std::runtime_error {
public:
    enumeration_timeout() : std::runtime_error("enumeration deadline exceeded") {}
};

}  // namespace kpath
