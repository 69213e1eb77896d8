#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace johnkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorKind {
  InvalidInput,
  Unbounded,
  Degenerate,
  Singular,
  NotConverged,
  Infeasible,
  Unsupported,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so
/// front ends can map it onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace johnkit
