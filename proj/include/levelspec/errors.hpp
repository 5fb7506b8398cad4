#pragma once

#include <stdexcept>
#include <string>

namespace levelspec {

//! Bad arguments or malformed inputs (precondition violations).
class ValidationError : public std::invalid_argument
{
public:
  explicit ValidationError(const std::string& what)
    : std::invalid_argument(what)
  {}
};

//! File could not be read, parsed or written.
class IoError : public std::runtime_error
{
public:
  explicit IoError(const std::string& what)
    : std::runtime_error(what)
  {}
};

//! The level threshold left no sample point in the level set.
class EmptyLevelSetError : public std::runtime_error
{
public:
  explicit EmptyLevelSetError(const std::string& what = "empty level set")
    : std::runtime_error(what)
  {}
};

//! Eigensolver failure, rank deficiency and similar numerical breakdowns.
class NumericError : public std::runtime_error
{
public:
  explicit NumericError(const std::string& what)
    : std::runtime_error(what)
  {}
};

} // namespace levelspec
