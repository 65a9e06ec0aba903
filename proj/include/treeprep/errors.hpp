#pragma once

#include <stdexcept>
#include <string>

namespace treeprep {

// A moment tried to use the same qubit twice.
class ConflictError : public std::runtime_error {
public:
    explicit ConflictError(const std::string& msg) : std::runtime_error(msg) {}
};

// A gate's operands are not wired together on the architecture.
class ConnectivityError : public std::runtime_error {
public:
    explicit ConnectivityError(const std::string& msg) : std::runtime_error(msg) {}
};

// The sparse simulator exceeded its term cap (pathological noise regime).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace treeprep
