#pragma once

#include <stdexcept>
#include <string>

namespace lolab {

/// Malformed or out-of-range input.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A hypothesis of a lemma or theorem does not hold for the given input.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An exact enumeration would exceed its configured budget.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// The requested operation is not available for this distribution family.
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace lolab
