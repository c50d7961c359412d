#pragma once

#include <stdexcept>
#include <string>

namespace multikat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// compose() called with the wrong number of arguments.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// An argument's codomain does not match the corresponding input slot,
/// or an index map is not over the given object lists.
class ObjectMismatch : public Error {
 public:
  using Error::Error;
};

/// An arrow that does not belong to the multicategory it was handed to.
class ForeignArrow : public Error {
 public:
  using Error::Error;
};

/// A hom-set, carrier or search space exceeded its configured cap.
class EnumerationOverflow : public Error {
 public:
  using Error::Error;
};

class MonoidLawFailure : public Error {
 public:
  using Error::Error;
};

class ModuleLawFailure : public Error {
 public:
  using Error::Error;
};

class FpLawFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input structure. `where` is a JSON pointer into the offending
/// document (empty when the error is not tied to a document position).
class SchemaError : public Error {
 public:
  SchemaError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace multikat
