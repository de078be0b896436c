#pragma once

#include <stdexcept>
#include <string>

namespace qhtk {

// Bad user data: malformed JSON, violated preconditions, inconsistent inputs.
// The CLI maps this to exit code 2.
class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// Violation of an invariant the library itself guarantees. Exit code 3.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace qhtk
