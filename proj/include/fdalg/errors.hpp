#pragma once

#include <stdexcept>
#include <string>

namespace fdalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// The eigenvalue iteration hit its cap, or a randomized search ran out of draws.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class RankDeficient : public Error {
public:
    using Error::Error;
};

class NotProper : public Error {
public:
    using Error::Error;
};

class NotAnIdeal : public Error {
public:
    using Error::Error;
};

class NotASubsetIdeal : public Error {
public:
    using Error::Error;
};

/// Raised when an operation is asked for a certificate that does not exist,
/// e.g. a vanishing character for an invertible element.
class NotApplicable : public Error {
public:
    using Error::Error;
};

class InapplicableNorm : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace fdalg
