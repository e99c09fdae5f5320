// errors.hpp: Exception types shared by the propagator library

#pragma once

#include <stdexcept>
#include <string>

namespace jcprop {

// Argument lands on (or within rounding of) a simple pole.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Two poles that the closed form treats as distinct coincide.
class DegeneratePoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Iterative or series evaluation failed to reach the requested tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace jcprop
