#pragma once

#include <stdexcept>
#include <string>

namespace adaseq {

// Malformed or inconsistent input: bad weights, duplicate edges,
// contradictory observations, distributions that do not sum to one.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A request exceeds a hard enumeration guard (exact oracles are
// exponential; the guards keep them honest).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace adaseq
