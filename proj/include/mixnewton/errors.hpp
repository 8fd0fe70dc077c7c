#ifndef MIXNEWTON_ERRORS_HPP
#define MIXNEWTON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mixnewton {

// Thrown when a point or polynomial has the wrong number of variables.
class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown by geometry entry points that require a nonzero polynomial.
class ZeroPolynomialError : public std::invalid_argument {
public:
    explicit ZeroPolynomialError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown by analysis entry points that reject constant inputs.
class DegenerateInputError : public std::invalid_argument {
public:
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a face is passed together with a polynomial it was not built from.
class ForeignFaceError : public std::invalid_argument {
public:
    explicit ForeignFaceError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown on exact integer overflow in the lattice geometry kernel.
class LatticeOverflow : public std::overflow_error {
public:
    explicit LatticeOverflow(const std::string& what) : std::overflow_error(what) {}
};

} // namespace mixnewton

#endif
