#pragma once

#include <stdexcept>
#include <string>

namespace agsgr {

// Process exit codes. Library code throws; the CLI maps exceptions to these.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitFormat = 2,
  kExitIo = 3,
  kExitNoTrainingData = 4,
  kExitEmptyResult = 5,
  kExitUnknownUser = 6,
  kExitOracleMismatch = 7,
};

class Error : public std::runtime_error {
 public:
  Error(const std::string& msg, int code) : std::runtime_error(msg), code_(code) {}
  int exit_code() const { return code_; }

 private:
  int code_;
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error(m, kExitIo) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& m) : Error(m, kExitFormat) {}
};

struct NoTrainingData : Error {
  explicit NoTrainingData(const std::string& m) : Error(m, kExitNoTrainingData) {}
};

// A query user that is not registered in the network.
struct UnknownUser : Error {
  explicit UnknownUser(const std::string& m) : Error(m, kExitUnknownUser) {}
};

// A topic id with no latent vector in the model.
struct UnknownTopic : Error {
  explicit UnknownTopic(const std::string& m) : Error(m, kExitFormat) {}
};

// Topic selection over an empty vocabulary.
struct NoTopic : Error {
  explicit NoTopic(const std::string& m) : Error(m, kExitEmptyResult) {}
};

// Query answered with no candidate group / no usable result.
struct EmptyResult : Error {
  explicit EmptyResult(const std::string& m) : Error(m, kExitEmptyResult) {}
};

// Aggregate-distance or centroid computation over an empty member set.
struct EmptyGroup : Error {
  explicit EmptyGroup(const std::string& m) : Error(m, kExitInternal) {}
};

}  // namespace agsgr
