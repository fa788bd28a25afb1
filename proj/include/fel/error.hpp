#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Input outside an operation's domain: U in a two-valued logic, alphabet not
// covered by beta, non-FNF argument, missing variable, and the like.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NoDecomposition : public Error {
 public:
  using Error::Error;
};

class NotInImage : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Always a bug.
class DefectError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fel
