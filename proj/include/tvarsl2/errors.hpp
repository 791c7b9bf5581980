#pragma once

#include <stdexcept>
#include <string>

namespace tvarsl2 {

// Thrown when an operation is called outside its mathematical domain
// (rank mismatch, zero vector where nonzero required, improper divisor, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed external input (JSON, rational strings, CLI args).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant breach; indicates a bug, not bad input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tvarsl2
