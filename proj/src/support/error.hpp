#pragma once

#include <stdexcept>
#include <string>

namespace geomom {

enum class ErrorCode {
  parse = 1,        // lexical, syntax, or chart-semantic error
  domain,           // evaluation outside a function's domain (log(0), x/0, ...)
  singular_point,   // rank-deficient Jacobian (coordinate degeneracy)
  not_orthogonal,   // slice coordinate not metric-orthogonal to the surface
  grid,             // malformed grid spec or grid mismatch
  invalid_argument, // bad call-level input (unknown name, missing binding, ...)
  internal,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

class ParseError : public Error {
public:
  // offset/line are 0-based byte offset and 1-based line number; -1 = unknown.
  ParseError(std::string msg, long offset = -1, long line = -1)
      : Error(ErrorCode::parse, std::move(msg)), offset_(offset), line_(line) {}
  long offset() const { return offset_; }
  long line() const { return line_; }

private:
  long offset_;
  long line_;
};

class DomainError : public Error {
public:
  explicit DomainError(std::string msg) : Error(ErrorCode::domain, std::move(msg)) {}
};

class SingularChartPoint : public Error {
public:
  explicit SingularChartPoint(std::string msg) : Error(ErrorCode::singular_point, std::move(msg)) {}
};

class NotOrthogonalSlice : public Error {
public:
  explicit NotOrthogonalSlice(std::string msg) : Error(ErrorCode::not_orthogonal, std::move(msg)) {}
};

class GridError : public Error {
public:
  explicit GridError(std::string msg) : Error(ErrorCode::grid, std::move(msg)) {}
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(std::string msg) : Error(ErrorCode::invalid_argument, std::move(msg)) {}
};

} // namespace geomom
