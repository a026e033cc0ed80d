#pragma once

#include <stdexcept>
#include <string>

namespace nlbound {

// Thrown when an operation is invoked above its documented size cap
// (e.g. truth tables for n > 24, exhaustive sweeps for n > 16, nl2 for n > 6).
// The CLI maps this to exit code 3.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nlbound
