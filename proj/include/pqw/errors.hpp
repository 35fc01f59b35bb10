#pragma once

#include <stdexcept>
#include <string>

namespace pqw {

// Invalid argument values: non-finite angles, malformed sequences, out-of-range
// probabilities or initial-state angles.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The lattice (or a dense oracle) is too small for the requested evolution.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// A computation produced a value outside its mathematically valid range.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pqw
