#pragma once

#include <stdexcept>
#include <string>

namespace isingpf {

// Base type for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DimensionCapExceeded : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

class NotUnitary : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class SiteOutOfRange : public Error {
public:
    using Error::Error;
};

class BaselineNotCrossed : public Error {
public:
    using Error::Error;
};

class UnsupportedScheme : public Error {
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

// Thrown when an argument of tan(x)/x falls inside the guard band around a
// pole of the tangent.  Carries the offending argument so callers can report
// exactly which evaluation was inadmissible.
class NearPole : public Error {
public:
    NearPole(double argument, const std::string& context)
        : Error(context + ": argument " + std::to_string(argument) +
                " lies within the guard band around a pole of tan"),
          argument_(argument) {}

    double argument() const noexcept { return argument_; }

private:
    double argument_;
};

}  // namespace isingpf
