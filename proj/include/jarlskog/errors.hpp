#pragma once

#include <stdexcept>
#include <string>

namespace jarlskog {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class NotHermitianError : public Error {
public:
    NotHermitianError(const std::string& what, double defect) : Error(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

class NotUnitaryError : public Error {
public:
    NotUnitaryError(const std::string& what, double defect) : Error(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

/// Raised when eigenvalues coincide (or nearly so); every invariant here
/// assumes all multiplicities are 1.
class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

}  // namespace jarlskog
