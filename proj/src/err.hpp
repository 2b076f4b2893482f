// Copyright 2026 The mwcert Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MWCERT_ERR_HPP
#define MWCERT_ERR_HPP

#include <stdexcept>

namespace mwcert {

// Invalid mathematical input (non-prime parameter, zero where nonzero needed).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configured budget was exhausted (factoring iterations, coordinate size).
// Signals that the computation must be skipped, not that it is wrong.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A local-height case outside the supported reduction-type table.
struct UnsupportedCaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Floating-point iteration hit a pole or lost too much precision.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed configuration or command-line input.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace mwcert

#endif
