#pragma once

#include <stdexcept>

namespace qsense {

// Least-squares design matrix is singular (all abscissas at zeros of the model).
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Phase inversion requested at a fringe extremum, where the linearization
// slope is below the floor and the inverse is meaningless.
class OperatingPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two-qubit state has weight outside the symmetric (triplet) subspace.
class SubspaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wigner field has no positive maximum to measure a width from.
class DegenerateFieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qsense
