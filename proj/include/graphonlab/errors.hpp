#ifndef GRAPHONLAB_ERRORS_HPP
#define GRAPHONLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace graphonlab {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: zero sizes, out-of-range reals, violated regime constraints.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Malformed input data: asymmetric matrices, measures that do not sum to one,
// roots that are not independent, unparsable JSON.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A lemma hypothesis does not hold for the supplied instance.
class HypothesisError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The requested computation would exceed the elementary-operation budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

} // namespace graphonlab

#endif
