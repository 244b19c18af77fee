#pragma once

#include <stdexcept>
#include <string>

namespace endolat {

// Malformed input: out-of-range images, bad files, size mismatches.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Well-formed input that violates an operation's precondition.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A construction that should have verified did not. Always a bug.
class verification_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace endolat
