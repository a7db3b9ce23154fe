#pragma once

#include <stdexcept>
#include <string>

namespace pencilcount {

/// Process exit codes shared by the library and the command-line tool.
enum class ExitCode : int {
  success = 0,
  verification_failure = 1,
  usage = 2,
  resource = 3,
};

/// Base class for every error raised by the library. Each error knows the
/// exit code the command-line front end reports for it.
class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Invalid user input: bad bidegree, l out of range, unknown convention.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ExitCode::usage, what) {}
};

/// A caller broke a precondition of an in-process API (e.g. marking/layout mismatch).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(ExitCode::usage, what) {}
};

/// The scan frontier grew past the configured cap.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ExitCode::resource, what) {}
};

/// Embedded data failed its checksum.
class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error(ExitCode::verification_failure, what) {}
};

/// A verification check failed hard (e.g. no sign convention fits the tables).
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what)
      : Error(ExitCode::verification_failure, what) {}
};

}  // namespace pencilcount
