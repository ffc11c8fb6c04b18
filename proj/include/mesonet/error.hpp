#ifndef MESONET_ERROR_HPP
#define MESONET_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mesonet {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate book_id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class FetchError : public Error {
 public:
  using Error::Error;
};

class EmptyBodyError : public Error {
 public:
  using Error::Error;
};

class TooFewParagraphsError : public Error {
 public:
  using Error::Error;
};

class InfeasibleDegreeError : public Error {
 public:
  using Error::Error;
};

}  // namespace mesonet

#endif  // MESONET_ERROR_HPP
