#pragma once

#include <stdexcept>
#include <string>

namespace fnnlint {

/// Base class of every error raised by the analyzer. The CLI maps all of
/// them to exit code 2.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyModel : public Error {
public:
  EmptyModel() : Error("model has no layers") {}
};

class SchemaError : public Error {
public:
  SchemaError(std::string path, std::string reason)
      : Error(path + ": " + reason), path_(std::move(path)), reason_(std::move(reason)) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& reason() const noexcept { return reason_; }

private:
  std::string path_;
  std::string reason_;
};

class VersionError : public Error {
public:
  explicit VersionError(long long found)
      : Error("unsupported format_version " + std::to_string(found) + " (expected 1)"),
        found_(found) {}

  long long found() const noexcept { return found_; }

private:
  long long found_;
};

class IoError : public Error {
public:
  using Error::Error;
};

class UnsupportedExtension : public Error {
public:
  explicit UnsupportedExtension(const std::string& path)
      : Error("unsupported input extension: " + path) {}
};

/// Error tied to a position in analyzed source text.
class SourceError : public Error {
public:
  SourceError(const std::string& what, int line, int col)
      : Error(what), line_(line), col_(col) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

private:
  int line_;
  int col_;
};

class LexError : public SourceError {
public:
  using SourceError::SourceError;
};

class ParseError : public SourceError {
public:
  ParseError(const std::string& expected, int line, int col)
      : SourceError("expected " + expected, line, col), expected_(expected) {}

  const std::string& expected() const noexcept { return expected_; }

private:
  std::string expected_;
};

class NoModelFound : public Error {
public:
  NoModelFound() : Error("no Sequential model construction found") {}
};

class StaleMatch : public Error {
public:
  explicit StaleMatch(const std::string& rule) : Error("stale match for rule " + rule) {}
};

class UnknownCode : public Error {
public:
  explicit UnknownCode(const std::string& code) : Error("unknown smell code '" + code + "'"), code_(code) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

class UsageError : public Error {
public:
  using Error::Error;
};

}  // namespace fnnlint
