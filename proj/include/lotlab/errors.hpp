// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_ERRORS_HPP
#define LOTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lotlab
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
 public:
   using std::runtime_error::runtime_error;
};

/// Instance data violates a shape or range invariant.
class ValidationError : public Error
{
 public:
   using Error::Error;
};

/// Malformed JSON, MPS or LP text.
class ParseError : public Error
{
 public:
   using Error::Error;
};

/// Checked integer arithmetic left the representable range.
class OverflowError : public Error
{
 public:
   using Error::Error;
};

/// An exact oracle refused an instance larger than its enumeration budget.
class BudgetExceeded : public Error
{
 public:
   using Error::Error;
};

/// A solution handed to a mapping is not feasible, or a mapping precondition fails.
class MappingError : public Error
{
 public:
   using Error::Error;
};

} // namespace lotlab

#endif
