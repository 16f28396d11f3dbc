// errors.hpp — exception types for contract violations and numerical failures

#pragma once

#include <stdexcept>
#include <string>

namespace ctqw {

// Base class for everything this library throws on its own behalf.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NonHermitianInput : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class NonMonotonicTimes : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class EdgeNotPresent : public Error {
public:
    using Error::Error;
};

class ConstraintUnsatisfiable : public Error {
public:
    using Error::Error;
};

class SeedNotNormalized : public Error {
public:
    using Error::Error;
};

class InvalidNode : public Error {
public:
    using Error::Error;
};

class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

class OutOfModelRange : public Error {
public:
    using Error::Error;
};

class NegligibleEfficiency : public Error {
public:
    using Error::Error;
};

} // namespace ctqw
