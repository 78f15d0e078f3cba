#pragma once

#include <stdexcept>
#include <string>

namespace uot {

class UotError : public std::runtime_error {
public:
    explicit UotError(const std::string& what) : std::runtime_error(what) {}
};

// Shapes of two operands disagree.
class DimensionMismatch : public UotError {
public:
    explicit DimensionMismatch(const std::string& what) : UotError(what) {}
};

// An argument is outside the mathematical domain (negative mass,
// nonpositive reference measure, ...).
class DomainError : public UotError {
public:
    explicit DomainError(const std::string& what) : UotError(what) {}
};

// A kernel reduction produced 0 or a non-finite value where the matching
// marginal entry is positive. Raised by plain-mode scaling and by kernel
// construction when a whole row or column vanishes.
class NumericalUnderflow : public UotError {
public:
    explicit NumericalUnderflow(const std::string& what) : UotError(what) {}
};

// A trace and a reference solution come from different problem instances.
class ProvenanceMismatch : public UotError {
public:
    explicit ProvenanceMismatch(const std::string& what) : UotError(what) {}
};

class IoError : public UotError {
public:
    explicit IoError(const std::string& what) : UotError(what) {}
};

}  // namespace uot
