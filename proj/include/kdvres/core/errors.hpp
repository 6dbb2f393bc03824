#pragma once

#include <stdexcept>
#include <string>

namespace kdvres {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two polynomials over different generator catalogs were combined.
class CatalogMismatch : public Error {
public:
    using Error::Error;
};

/// A differential polynomial is not a total derivative.
class NotExact : public Error {
public:
    using Error::Error;
};

/// A cached table (S-polynomials, zeta, bar-S, two-point function) is too shallow.
class InsufficientDepth : public Error {
public:
    using Error::Error;
};

class SeriesError : public Error {
public:
    using Error::Error;
};

class NoConsistentCalibration : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace kdvres
