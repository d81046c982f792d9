#pragma once

#include <stdexcept>
#include <string>

namespace lipflow {

/// Thrown when an operation is called outside its contract (bad window,
/// mismatched grids, out-of-range arguments). Maps to CLI exit code 1.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a computation detects a violated numerical guarantee at
/// runtime (e.g. a trajectory leaving its invariant domain). Maps to CLI
/// exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lipflow
