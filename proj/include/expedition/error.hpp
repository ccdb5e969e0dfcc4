#pragma once

#include <stdexcept>
#include <string>

namespace expedition {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (corpus records, export documents, index files).
class DataError : public Error {
public:
    using Error::Error;
};

/// Index file written by an incompatible format version.
class VersionError : public DataError {
public:
    using DataError::DataError;
};

/// Caller supplied an invalid argument (bad model name, k = 0, unknown stage id ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// None of the query terms occurs in the collection.
class NoMatchError : public Error {
public:
    using Error::Error;
};

}  // namespace expedition
