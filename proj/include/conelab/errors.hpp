#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace conelab {

/// Malformed argument: empty vector, dimension mismatch, violated bracket.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed argument that breaks an operation's precondition
/// (non-positive dilation, functional not strictly positive, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine ran out of iterations. Carries the best iterate.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, Eigen::VectorXd best)
      : std::runtime_error(what), best_(std::move(best)) {}

  const Eigen::VectorXd& best_iterate() const noexcept { return best_; }

 private:
  Eigen::VectorXd best_;
};

/// The flat-set dominance argument needs an index outside the saturated set,
/// and the truncation has none left.
class TruncationSaturated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The separating functional required by the strict-maximality certificate
/// could not be found.
class SeparationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conelab
