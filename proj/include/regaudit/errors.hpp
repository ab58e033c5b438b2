#pragma once

#include <stdexcept>
#include <string>

namespace regaudit {

/// Caller supplied something malformed: unknown names, bad ranges, parse failures.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The inputs are well formed but the requested quantity does not exist
/// (all-zero weights, zero pooled SD, certain events with infinite odds).
class degenerate_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Design matrix is rank deficient or too ill-conditioned to solve.
class singular_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A self-check that should never fire did.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace regaudit
