#ifndef DIGITDIM_ERRORS_HPP
#define DIGITDIM_ERRORS_HPP

#include <stdexcept>

namespace digitdim {

// A mathematical operation was asked to act outside its domain
// (log of a non-positive enclosure, division by an enclosure containing 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A caller-supplied parameter violates a documented precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The request is well formed but deliberately not supported.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search terminated without finding a qualifying value.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace digitdim

#endif
